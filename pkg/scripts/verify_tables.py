#!/usr/bin/env python3
"""Recompute the published Gershgorin/gamma tables and the five eliminations."""
import sys

from cyclomin.experiments import verify_paper_tables

if __name__ == "__main__":
    rep = verify_paper_tables()
    sys.stdout.write(rep.to_text())
    sys.exit(0 if rep.passed else 1)
