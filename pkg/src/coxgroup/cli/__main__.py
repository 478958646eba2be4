"""Allow running the CLI package as a module."""

from coxgroup.cli import main

if __name__ == "__main__":
    main()
