import sys

from monostatic.cli import main

sys.exit(main())
