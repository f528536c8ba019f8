import logging

_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
}


class EventLogger:
    """
    Mixin giving a component a named logger and the ``_log_event`` helper.

    Each class logs under ``malcev.pi.<ClassName>`` so a single component can be
    silenced or raised with the standard logging configuration.
    """

    @property
    def logger(self) -> logging.Logger:
        return logging.getLogger(f"malcev.pi.{type(self).__name__}")

    def _log_event(self, message: str, level: str = "info") -> None:
        self.logger.log(_LEVELS.get(level, logging.INFO), message)


def configure_logging(level: str = "WARNING") -> None:
    """Send library logs to stderr at ``level``; stdout stays reserved for results."""
    logging.basicConfig(
        level=_LEVELS.get(str(level).lower(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
