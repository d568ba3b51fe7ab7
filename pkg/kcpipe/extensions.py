import logging
import sys

LOG_FORMAT = '%(asctime)s %(levelname)s [%(name)s] %(message)s'

logger = logging.getLogger('kcpipe')


def configure_logging(level='INFO'):
    """Attach a single stream handler to the package logger.

    Calling again re-targets the handler at the current sys.stderr.
    """
    handler = next((h for h in logger.handlers if getattr(h, '_kcpipe', False)), None)
    if handler is None:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._kcpipe = True
        logger.addHandler(handler)
    else:
        handler.setStream(sys.stderr)
    logger.setLevel(level.upper() if isinstance(level, str) else level)
    return logger
