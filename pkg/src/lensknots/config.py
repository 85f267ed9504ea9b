import json
from dataclasses import dataclass
from dataclasses import field as _field
from dataclasses import fields, is_dataclass
from functools import reduce
from logging import getLogger
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Type, Union

from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException
from platformdirs import user_cache_dir, user_config_dir
from yaml import YAMLError
from yaml.scanner import ScannerError

from .utils import LensknotsSettings

__all__ = [
    "field",
    "ConfigError",
    "CensusConfig",
    "LensknotsConfig",
    "from_dataclass",
    "from_file",
    "from_options",
    "merge",
    "to_yaml",
    "to_object",
    "load_config",
    "options_table",
]

LOGGER = getLogger(__name__)

APP_NAME = "lensknots"
FORMATS = ("text", "json", "csv")
LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


class ConfigError(ValueError):
    """A configuration file or override could not be used; the command
    line reports it as a usage error."""


def field(*, help: Optional[str] = None, **kwargs):
    metadata = {**kwargs.pop("metadata", {}), "help": help}
    return _field(metadata=metadata, **kwargs)


@dataclass
class CensusConfig:
    workers: int = field(
        default=1, help="Processes used to build census reports."
    )
    cache: bool = field(
        default=False, help="Reuse census reports cached on disk."
    )
    cache_dir: Optional[str] = field(
        default=None,
        help="Directory of the census cache; defaults to the user cache.",
    )
    format: str = field(
        default="json", help="Census output format: json (lines) or csv."
    )


@dataclass
class LensknotsConfig:
    format: str = field(
        default="text", help="Output format of single queries."
    )
    log_level: str = field(default="WARNING", help="Logging level.")
    verify: bool = field(
        default=False,
        help="Exit with status 1 when a family cross-check fails.",
    )
    census: CensusConfig = field(
        default_factory=CensusConfig, help="Census generation."
    )


def from_dataclass(config: Any) -> DictConfig:
    """Cast a dataclass to a structured omega config"""
    if not is_dataclass(config):
        raise TypeError(f"`{config}` is not a dataclass!")

    parsed_config = OmegaConf.structured(config)
    if not isinstance(parsed_config, DictConfig):
        raise TypeError(f"Cannot create dict config from `{config}`")
    return parsed_config


def from_file(path: Union[str, Path]) -> DictConfig:
    """Load a config from a file, either YAML or JSON"""
    path = Path(path)

    if not path.exists():
        raise ConfigError(f"Cannot find configuration at {path}")

    try:
        # if it fails, it's not a yaml file
        config = OmegaConf.load(path)
    except ScannerError:
        try:
            with open(path, "r", encoding="utf-8") as f:
                config = OmegaConf.create(json.load(f))
        except json.JSONDecodeError:
            raise ConfigError(
                f"Cannot parse configuration at {path}; "
                "not a valid YAML or JSON file"
            )
    except YAMLError as e:
        raise ConfigError(f"Cannot parse configuration at {path}: {e}")

    if not isinstance(config, DictConfig):
        raise ConfigError(f"Config loaded from {path} is not a mapping!")

    return config


def from_options(opts: Sequence[str]) -> DictConfig:
    """Create a config from a list of `key.path=value` options"""
    bad = [o for o in opts if "=" not in o]
    if bad:
        raise ConfigError(f"Options {bad} are not of the form key=value")

    config = OmegaConf.from_dotlist(list(opts))
    if not isinstance(config, DictConfig):
        raise ConfigError(f"input is not a sequence of options, but `{opts}")
    return config


def merge(first_config: DictConfig, *other_configs: DictConfig) -> DictConfig:
    """Merge configurations in order; the structured schema of the first
    one rejects unknown keys and values of the wrong type."""
    try:
        output = reduce(OmegaConf.merge, other_configs, first_config)
    except OmegaConfBaseException as e:
        raise ConfigError(f"Invalid configuration: {e}") from e

    if not isinstance(output, DictConfig):
        raise ConfigError("Merged configuration is not a mapping!")
    return output


def to_yaml(config: Any) -> str:
    """Convert a omegaconf config to a YAML string"""
    if not isinstance(config, DictConfig):
        config = from_dataclass(config)
    return OmegaConf.to_yaml(config)


def to_object(config: DictConfig) -> LensknotsConfig:
    obj = OmegaConf.to_object(config)
    if not isinstance(obj, LensknotsConfig):
        raise ConfigError(f"`{config}` is not a lensknots configuration")
    return obj


def _check(config: LensknotsConfig) -> LensknotsConfig:
    if config.format not in FORMATS:
        raise ConfigError(
            f"format must be one of {FORMATS}, not '{config.format}'"
        )
    if config.census.format not in ("json", "csv"):
        raise ConfigError(
            f"census.format must be json or csv, not '{config.census.format}'"
        )
    if config.log_level.upper() not in LOG_LEVELS:
        raise ConfigError(
            f"log_level must be one of {LOG_LEVELS}, not '{config.log_level}'"
        )
    if config.census.workers < 1:
        raise ConfigError(
            f"census.workers must be at least 1, not {config.census.workers}"
        )
    return config


def user_config_path() -> Path:
    return Path(user_config_dir(APP_NAME)) / "config.yaml"


def default_cache_dir() -> Path:
    return Path(user_cache_dir(APP_NAME))


def load_config(
    config_files: Sequence[Union[str, Path]] = (),
    options: Sequence[str] = (),
    use_user_config: bool = True,
    use_environment: bool = True,
) -> Tuple[DictConfig, LensknotsConfig]:
    """Layer the configuration sources, later ones winning: defaults, the
    user config file, each file in `config_files`, the LENSKNOTS_FORMAT
    environment variable, then dot-list `options`."""

    layers: List[DictConfig] = []
    user_file = user_config_path()
    if use_user_config and user_file.exists():
        LOGGER.debug(f"Reading user configuration from {user_file}")
        layers.append(from_file(user_file))

    layers.extend(from_file(p) for p in config_files)

    env_format = LensknotsSettings.env_format() if use_environment else None
    if env_format is not None:
        layers.append(OmegaConf.create({"format": env_format}))

    if options:
        layers.append(from_options(options))

    merged = merge(from_dataclass(LensknotsConfig), *layers)
    return merged, _check(to_object(merged))


def options_table(
    cls: Type[Any] = LensknotsConfig, prefix: str = ""
) -> List[Tuple[str, str, str, str]]:
    """(key, type, default, help) for every option, nested ones dotted."""
    rows: List[Tuple[str, str, str, str]] = []
    defaults = cls()
    for f in fields(cls):
        key = f"{prefix}{f.name}"
        value = getattr(defaults, f.name)
        if is_dataclass(value):
            rows.extend(options_table(type(value), prefix=f"{key}."))
            continue
        type_name = getattr(f.type, "__name__", str(f.type))
        rows.append(
            (
                key,
                type_name.replace("typing.", ""),
                repr(value),
                f.metadata.get("help") or "",
            )
        )
    return rows
