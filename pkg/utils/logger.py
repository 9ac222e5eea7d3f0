# utils/logger.py
# Logging utility for adder-ud with run-context diagnostics format

import logging
import os
from logging.handlers import RotatingFileHandler

# Run-context log format: extra fields become bracketed tags
class RunFormatter(logging.Formatter):
    def format(self, record):
        base = super().format(record)
        extras = []
        command = record.__dict__.get('command')
        code_name = record.__dict__.get('code_name')
        users = record.__dict__.get('users')
        n = record.__dict__.get('n')
        elapsed = record.__dict__.get('elapsed')
        if command:
            extras.append(f"[CMD:{command}]")
        if code_name:
            extras.append(f"[CODE:{code_name}]")
        if users is not None:
            extras.append(f"[T:{users}]")
        if n is not None:
            extras.append(f"[N:{n}]")
        if elapsed is not None:
            extras.append(f"[ELAPSED:{elapsed:.3f}s]")
        if not extras:
            return base
        return f"{base} {' '.join(extras)}"

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'

# Application logger; handlers are attached by configure_logging() so that
# importing the library never touches the filesystem
logger = logging.getLogger("AdderUD")
logger.setLevel(logging.DEBUG)
logger.addHandler(logging.NullHandler())

# Progress of long-running searches and tabu runs
search_logger = logging.getLogger("AdderUD.Search")

_configured = False

def configure_logging(config):
    """Attach rotating file handlers and a console handler according to config."""
    global _configured
    if _configured:
        return logger

    os.makedirs(config.log_dir, exist_ok=True)
    formatter = RunFormatter(LOG_FORMAT)

    # 2MB per file, 5 backups for the main log
    file_handler = RotatingFileHandler(
        os.path.join(config.log_dir, 'adder_ud.log'),
        maxBytes=2*1024*1024,
        backupCount=5,
        encoding='utf-8'
    )
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logging.DEBUG)

    # Console output goes to stderr so stdout stays clean for results
    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)
    stream_handler.setLevel(getattr(logging, config.log_level, logging.INFO))

    logger.addHandler(file_handler)
    logger.addHandler(stream_handler)

    # Search progress also lands in its own smaller file
    search_handler = RotatingFileHandler(
        os.path.join(config.log_dir, 'search.log'),
        maxBytes=1*1024*1024,
        backupCount=3,
        encoding='utf-8'
    )
    search_handler.setFormatter(formatter)
    search_logger.addHandler(search_handler)

    _configured = True
    return logger
