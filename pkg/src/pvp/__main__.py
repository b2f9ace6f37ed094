import sys

from pvp.cli import main

sys.exit(main())
