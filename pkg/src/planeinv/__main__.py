"""Entry point for ``python -m planeinv``."""

import sys

from .cli import main

sys.exit(main())
