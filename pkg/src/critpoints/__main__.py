import sys

from critpoints.cli import main

sys.exit(main())
