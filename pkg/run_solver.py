"""
Entry point for the solver command line.
"""
import sys
import os

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

if __name__ == "__main__":
    from src.cli import main

    sys.exit(main())
