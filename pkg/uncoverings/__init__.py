###########################################################
__version__ = "0.1.0"
__status__ = "dev"
__license__ = "MIT"

from uncoverings.construct import Uncovering, construct_family
from uncoverings.graph import EdgeSubset, Graph, SpanningTree
from uncoverings.verify import Sampled, Verdict, verify_ubb
