import sys

from .towers_cli import main

sys.exit(main())
