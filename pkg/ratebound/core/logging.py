import logging
import logging.config
from pathlib import Path

from ratebound.core.config import Settings

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


def configure_logging(settings: Settings) -> None:
    """Load logging.ini when present, otherwise an equivalent dictConfig."""
    path = Path(settings.logging_config)
    if path.is_file():
        logging.config.fileConfig(path, disable_existing_loggers=False)
    else:
        logging.config.dictConfig({
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {"generic": {"format": LOG_FORMAT, "datefmt": "%H:%M:%S"}},
            "handlers": {
                "console": {
                    "class": "logging.StreamHandler",
                    "stream": "ext://sys.stderr",
                    "formatter": "generic",
                },
            },
            "root": {"level": settings.log_level.upper(), "handlers": ["console"]},
            "loggers": {"ratebound": {"level": "INFO"}},
        })

    logging.getLogger().setLevel(settings.log_level.upper())
    if settings.debug:
        logging.getLogger("ratebound").setLevel(logging.DEBUG)
