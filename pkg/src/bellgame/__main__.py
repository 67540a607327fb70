import sys

from bellgame.cli import main

sys.exit(main())
