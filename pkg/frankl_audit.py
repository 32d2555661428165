#!/usr/bin/env python3
"""
Union-closed families toolkit and claim auditor.

Usage:
    python frankl_audit.py check family.txt
    python frankl_audit.py seq family.txt --kind ideal --element 1
    python frankl_audit.py enumerate -n 3 --count-only
    python frankl_audit.py audit -n 3 --format json --out report.json

Run `python frankl_audit.py --help` for every subcommand.
"""

import sys

from src.cli.commands import run


def main():
    """Run the command line and return its exit status."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
