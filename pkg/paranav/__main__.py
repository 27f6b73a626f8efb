"""Allow ``python -m paranav``."""
import sys

from paranav.sim.cli import main

sys.exit(main())
