import sys

from blomkit.cli import main

sys.exit(main())
