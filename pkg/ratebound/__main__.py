import sys

from ratebound.main import main

sys.exit(main())
