import json
import os
import sys
import tempfile

from uncoverings.core import run

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'fixtures')


def main():
    # Graph file from command line args or the circulant fixture
    graph = sys.argv[1] if len(sys.argv) > 1 else os.path.join(FIXTURES, 'c7.g6')
    ubb = sys.argv[2] if len(sys.argv) > 2 else os.path.join(FIXTURES, 'c7-ubb.json')

    print(f"Verifying {ubb} on {graph}...")

    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, 'verdict.json')
        code = run(['verify', '--graph', graph, '--ubb', ubb, '--minimal', '--out', out])
        print(f"exit code {code}")
        if os.path.exists(out):
            with open(out) as f:
                print(json.dumps(json.load(f), indent=2))

        stats = os.path.join(tmp, 'stats.json')
        code = run(['simulate', '--graph', graph, '--ubb', ubb, '--trials', '1000',
                    '--failure-size', '3', '--out', stats])
        if code == 0:
            with open(stats) as f:
                body = json.load(f)
            print(f"\nSimulated {body['trials']} trials, success rate {body['success_rate']}")


if __name__ == "__main__":
    main()
