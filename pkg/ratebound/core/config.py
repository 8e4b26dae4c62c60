from pydantic_settings import BaseSettings, SettingsConfigDict

from ratebound import __version__


class Settings(BaseSettings):
    app_name: str = "ratebound"
    env: str = "dev"
    debug: bool = False
    log_level: str = "WARNING"
    logging_config: str = "logging.ini"

    # thread pool size for chunked Monte-Carlo; results do not depend on it
    workers: int = 4

    @property
    def version(self) -> str:
        return __version__

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="RATEBOUND_",
        case_sensitive=False,
        extra="ignore"
    )

settings = Settings()
