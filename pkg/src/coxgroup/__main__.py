"""Allow running coxgroup as a module: python -m coxgroup."""

from coxgroup.cli import main

if __name__ == "__main__":
    main()
