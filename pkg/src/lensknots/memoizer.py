import hashlib
import inspect
import pickle
from functools import reduce, wraps
from logging import getLogger
from pathlib import Path
from typing import Callable, Optional, Tuple, TypeVar, Union

from platformdirs import user_cache_dir
from typing_extensions import ParamSpec

from .utils import get_version

__all__ = ["memoize"]

LOGGER = getLogger(__name__)

DEV_VERSION = "dev"

P = ParamSpec("P")
R = TypeVar("R")


def source_digest() -> str:
    """sha1 of the package sources, keying caches of unreleased checkouts."""
    digest = hashlib.sha1()
    for path in sorted(Path(__file__).parent.glob("*.py")):
        digest.update(path.name.encode("utf-8"))
        digest.update(path.read_bytes())
    return digest.hexdigest()


def cache_version() -> str:
    version = get_version()
    if version == DEV_VERSION:
        # uninstalled checkouts all report "dev"
        version = f"{version}+{source_digest()}"
    return version


def _cache_root(
    cachedir: Optional[Union[Path, str]],
    appname: Optional[Union[str, Tuple[str, ...]]],
) -> Path:
    if cachedir is not None:
        return Path(cachedir)
    if appname is None:
        raise ValueError("appname must be specified if cachedir is not")
    parts = (appname,) if isinstance(appname, str) else appname
    return reduce(lambda x, y: x / y, parts, Path(user_cache_dir()))


def memoize(
    cachedir: Optional[Union[Path, str]] = None,
    appname: Optional[Union[str, Tuple[str, ...]]] = "lensknots",
) -> Callable[[Callable[P, R]], Callable[P, R]]:
    """Pickle the results of a function under `cachedir` (by default the
    platformdirs user cache, one subdirectory per element of `appname`).

    An entry is named by the sha1 of the qualified function name, the
    package version and the bound arguments with defaults applied, so
    `f(2)` and `f(a=2)` share it and a new release starts empty.
    Development checkouts key on a digest of the package sources instead
    of the bare "dev" version.
    """
    root = _cache_root(cachedir, appname)
    root.mkdir(parents=True, exist_ok=True)
    version = cache_version()

    def _memoize(func: Callable[P, R]) -> Callable[P, R]:
        name = f"{func.__module__}.{func.__qualname__}"
        signature = inspect.signature(func)

        def entry(*args, **kwargs) -> Tuple[Path, str]:
            bound = signature.bind(*args, **kwargs)
            bound.apply_defaults()
            key = hashlib.sha1(f"{name}\0{version}".encode("utf-8"))
            for item in bound.arguments.items():
                key.update(pickle.dumps(item))
            call = ", ".join(f"{k}={v}" for k, v in bound.arguments.items())
            return root / f"{key.hexdigest()}.pkl", f"{name}({call})"

        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
            path, call = entry(*args, **kwargs)
            if path.exists():
                LOGGER.info(f"Cache hit for {call} at {path}")
                with open(path, "rb") as f:
                    return pickle.load(f)

            result = func(*args, **kwargs)
            LOGGER.info(f"Caching {call} at {path}")
            with open(path, "wb") as f:
                pickle.dump(result, f)
            return result

        return wrapper

    return _memoize
