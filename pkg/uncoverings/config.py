import os


def _int_env(name, default):
    value = os.environ.get(name)
    if value is None or value == '':
        return default
    return int(float(value))


class Config:
    # Exhaustive verification refuses instances with more t-subsets than this
    SUBSET_CEILING = _int_env('UBB_SUBSET_CEILING', 10**8)

    # Search module caps
    TREE_POOL_CAP = _int_env('UBB_TREE_POOL_CAP', 10**5)
    SEARCH_SUBSET_CAP = _int_env('UBB_SEARCH_SUBSET_CAP', 10**7)
    EXACT_BUDGET = _int_env('UBB_EXACT_BUDGET', 200_000)

    # Adversarial simulator enumerates all minimum cuts below this many candidates
    MIN_CUT_ENUM_LIMIT = _int_env('UBB_MIN_CUT_ENUM_LIMIT', 10**5)

    CHUNK_SIZE = _int_env('UBB_CHUNK_SIZE', 1 << 16)
    THREADS = _int_env('UBB_THREADS', 1)
    SEED = _int_env('UBB_SEED', 0)
    SAMPLE_COUNT = _int_env('UBB_SAMPLE_COUNT', 10**6)

    LOG_LEVEL = os.environ.get('UBB_LOG_LEVEL') or 'WARNING'
    LOG_FORMAT = '%(asctime)s [%(levelname)-8s] [%(name)s] %(message)s'

    GRAPH_EXTENSIONS = {'g6', 'json'}

    @staticmethod
    def is_graph_file(filename):
        return '.' in filename and filename.rsplit('.', 1)[1].lower() in Config.GRAPH_EXTENSIONS
