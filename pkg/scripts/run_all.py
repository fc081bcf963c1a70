#!/usr/bin/env python3
"""Run every verification campaign with the default configuration.

Equivalent to `python -m depthzero all`; flags are passed through, e.g.

    python scripts/run_all.py --q 3,5,7 --out reports --jobs 4
"""

import sys

from depthzero.driver import main

if __name__ == "__main__":
    sys.exit(main(["all", *sys.argv[1:]]))
