"""Entry point for python -m arcmodel"""
from arcmodel.ui.cli import main

if __name__ == "__main__":
    main()
