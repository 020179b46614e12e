import sys

from evencycle.cli import main

sys.exit(main())
