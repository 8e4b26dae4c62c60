from ratebound.cli.main import main

__all__ = ["main"]
