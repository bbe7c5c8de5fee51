import sys

from stance_context.cli import main

sys.exit(main())
