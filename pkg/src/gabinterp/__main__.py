import sys

from gabinterp.cli import main

sys.exit(main())
