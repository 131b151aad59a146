import sys

from legstr.apps.cli import main

if __name__ == "__main__":
    sys.exit(main())
