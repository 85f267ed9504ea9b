from logging import (
    FileHandler,
    Formatter,
    Handler,
    Logger,
    basicConfig,
    getLevelName,
    getLogger,
)
from multiprocessing import current_process
from pathlib import Path
from typing import List, Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from .utils import LensknotsSettings

__all__ = ["configure_logging"]


def configure_logging(
    logger_name: Optional[str] = None,
    file_logging_path: Optional[Path] = None,
    make_dir_if_missing: bool = True,
    fmt: str = "[%(asctime)s][%(name)s][%(levelname)s] %(message)s",
    datefmt: str = "%Y-%m-%d %H:%M:%S",
    logging_level: Union[int, str, None] = None,
    add_rich_traceback: bool = True,
    rich_traceback_kwargs: Optional[dict] = None,
    stream_handler_kwargs: Optional[dict] = None,
) -> Logger:
    """Configure the root logger and return the logger `logger_name`.

    Log records go to standard error through a rich handler; standard
    output is left to command results so that it stays deterministic.

    Args:
        logger_name (Optional[str], optional): Logger to return; the root
            logger if not provided.
        file_logging_path (Optional[Path], optional): Also write logs to
            this file; the process name is appended to the file stem so
            census workers do not share a file. Defaults to None.
        make_dir_if_missing (bool, optional): Create the parent directory of
            `file_logging_path` if needed. Defaults to True.
        fmt (str, optional): Format of file log records.
        datefmt (str, optional): Date format of file log records.
        logging_level (Union[int, str], optional): Level of the root logger.
            DEBUG when debug mode is on, no matter what is passed.
        add_rich_traceback (bool, optional): Install rich tracebacks.
            Defaults to True.
        rich_traceback_kwargs (Optional[dict], optional): Passed to the
            traceback installer.
        stream_handler_kwargs (Optional[dict], optional): Passed to the
            rich handler.
    """

    if add_rich_traceback:
        from .rich_utils import add_pretty_traceback

        add_pretty_traceback(**(rich_traceback_kwargs or {}))

    if LensknotsSettings.DEBUG:
        logging_level = getLevelName("DEBUG")
    elif isinstance(logging_level, str):
        logging_level = getLevelName(logging_level.upper())

    stream_handler_kwargs = {
        "console": Console(stderr=True),
        **(stream_handler_kwargs or {}),
    }
    # rich comes with its own format, so we don't need to set it here
    handlers: List[Handler] = [RichHandler(**stream_handler_kwargs)]

    if file_logging_path is not None:
        file_logging_path = Path(file_logging_path)

        if make_dir_if_missing:
            file_logging_path.parent.mkdir(parents=True, exist_ok=True)

        path_name = (
            f"{file_logging_path.stem}"
            f"_{current_process().name}"
            f"{file_logging_path.suffix}"
        )
        file_handler = FileHandler(file_logging_path.parent / path_name)
        file_handler.setFormatter(Formatter(fmt=fmt, datefmt=datefmt))
        handlers.append(file_handler)

    # reattach every logger to the new handlers
    basicConfig(level=logging_level, force=True, handlers=handlers)
    return getLogger(logger_name)
