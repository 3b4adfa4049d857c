import sys

from doublestar.cli import main

sys.exit(main())
