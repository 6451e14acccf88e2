import sys

from heapcheck.cli.main import main

sys.exit(main())
