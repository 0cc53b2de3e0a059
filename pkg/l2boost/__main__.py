import sys

from l2boost.main import main

sys.exit(main())
