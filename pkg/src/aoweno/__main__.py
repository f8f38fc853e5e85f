import sys

from aoweno.cli import main

sys.exit(main())
