#!/usr/bin/env python3
"""
Full acceptance sweep
Runs every verification suite at production resolution and writes the
aggregate report under results/ (or the directory given with --out).

Usage: python run_acceptance.py [--out DIR] [--jobs N]
"""

import sys

from glreduced.main import run


def main() -> int:
    argv = ["verify", "--suite", "all", *sys.argv[1:]]
    print(f"[INFO] glreduced {' '.join(argv)}")
    code = run(argv)
    status = "[OK] all asserted checks hold" if code == 0 else f"[ERROR] acceptance failed with exit code {code}"
    print(status)
    return code


if __name__ == "__main__":
    sys.exit(main())
