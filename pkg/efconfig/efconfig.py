#------------------------------------------------------------------------------+
# efconfig.py - configuration file access and the validated RunConfig
#------------------------------------------------------------------------------+
import configparser, os
from dataclasses import dataclass, field, fields, replace
from typing import Optional

from efconstants import *
#------------------------------------------------------------------------------+
#region EFConfig Class
class EFConfig():
    """
    EFConfig class to handle configuration file reading and writing.
    A missing file reads as empty, so every lookup falls back to defaults.
    """

    def __init__(self, config_file: str = EF_DEFAULT_CONFIG_FILE):
        """
        Initialize the EFConfig with a configuration file.

        :param config_file: Path to the configuration file (default: 'efconfig.ini').
        """
        self.config = configparser.ConfigParser()
        self.config_file = config_file
        self.load_config()

    def load_config(self) -> None:
        """Load the configuration from the file."""
        self.config.read(self.config_file)

    def get(self, section: str, option: str, fallback: str = None) -> Optional[str]:
        """Get a value from the configuration, fallback when absent."""
        return self.config.get(section, option, fallback=fallback)

    def getint(self, section: str, option: str, fallback: int = None) -> Optional[int]:
        try:
            return self.config.getint(section, option, fallback=fallback)
        except ValueError as e:
            e.add_note(f"Invalid integer for [{section}] {option} in '{self.config_file}'")
            raise

    def set(self, section: str, option: str, value) -> None:
        """Set a value in the configuration, creating the section if needed."""
        if not self.config.has_section(section):
            self.config.add_section(section)
        self.config.set(section, option, str(value))

    def save(self) -> None:
        """Save the current configuration to the file."""
        with open(self.config_file, 'w') as configfile:
            self.config.write(configfile)
#endregion EFConfig Class
#------------------------------------------------------------------------------+
#region RunConfig Class
@dataclass(kw_only=True, frozen=True)
class RunConfig:
    """
    Validated settings for one CLI run.

    Precedence when built with resolve(): built-in defaults, then the
    [run] section of efconfig.ini, then ETAFORGE_DIGITS, then explicit
    overrides (command-line flags).
    """
    digits: int = EF_DEFAULT_DIGITS
    trunc: int = EF_DEFAULT_TRUNC
    degree_bound: int = EF_DEFAULT_DEGREE_BOUND
    output: Optional[str] = None
    format: str = EF_FORMAT_JSON
    console_level: str = field(default=EF_DEFAULT_CONSOLE_LOG_LEVEL, compare=False)

    def __post_init__(self):
        for name, floor in (("digits", EF_MIN_DIGITS), ("trunc", EF_MIN_TRUNC),
                            ("degree_bound", 1)):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                t = type(value).__name__
                raise TypeError(f"RunConfig.{name} requires type:int, not type: {t}")
            if value < floor:
                raise ValueError(f"RunConfig.{name} must be >= {floor}, not {value}")
        if self.format not in (EF_FORMAT_JSON, EF_FORMAT_TEXT):
            raise ValueError(f"RunConfig.format must be '{EF_FORMAT_JSON}' or " + \
                             f"'{EF_FORMAT_TEXT}', not '{self.format}'")
        if self.output is not None and not isinstance(self.output, str):
            t = type(self.output).__name__
            raise TypeError(f"RunConfig.output requires type:str or None, not type: {t}")

    @classmethod
    def from_config(cls, config: EFConfig) -> "RunConfig":
        """Defaults overlaid with the [run] and [logging] sections."""
        base = cls()
        return cls(digits=config.getint("run", "digits", base.digits),
                   trunc=config.getint("run", "trunc", base.trunc),
                   degree_bound=config.getint("run", "degree_bound", base.degree_bound),
                   format=config.get("run", "format", base.format),
                   console_level=config.get("logging", "console_level", base.console_level))

    @classmethod
    def resolve(cls, config: EFConfig = None, environ: dict = None, **overrides) -> "RunConfig":
        """Apply the full precedence chain; None-valued overrides are ignored."""
        rc = cls.from_config(config) if config is not None else cls()
        environ = os.environ if environ is None else environ
        env_digits = environ.get(EF_ENV_DIGITS)
        if env_digits not in (None, ""):
            try:
                rc = replace(rc, digits=int(env_digits))
            except ValueError as e:
                e.add_note(f"Invalid {EF_ENV_DIGITS}='{env_digits}'")
                raise
        known = {f.name for f in fields(cls)}
        unknown = set(overrides) - known
        if unknown:
            raise TypeError(f"Unknown RunConfig fields: {sorted(unknown)}")
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(rc, **given) if given else rc
#endregion RunConfig Class
#------------------------------------------------------------------------------+
