#!/usr/bin/env python3
"""Run the complete verification table and exit nonzero on any failure.

Equivalent to `whitneydual reproduce-paper`; kept as a script so the table
can be run straight from a checkout.
"""

import argparse
import sys

from whitneydual.cli import main


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=5)
    args = parser.parse_args()
    sys.exit(main(["reproduce-paper", "--max-n", str(args.max_n)]))
