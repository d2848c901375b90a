"""python -m relcurv"""
from .cli import main

raise SystemExit(main())
