# ---------------------------------------------------------------
# main.py
#
# Purpose:
#   Entry point for the crossfam command line. Every subcommand is
#   defined in scripts/analysis_runner.py.
#
#   python main.py bound --mode cross2 --n 6 --k 2 --L 1,2
# ---------------------------------------------------------------

import sys

from scripts.analysis_runner import main

if __name__ == "__main__":
    sys.exit(main())
