#------------------------------------------------------------------------------+
# ef_logging.py - Setup logging for the EtaForge application.
#------------------------------------------------------------------------------+
'''
ef_logging.py - Setup logging for the EtaForge application.
The application logger is a singleton. Console records go to stderr so that
stdout carries only the JSON or text reports written by the CLI, file records
go to a rotating log file. Calling ef_logging_setup() more than once, from
pytest or from direct module runs, never adds duplicate handlers.
'''
#------------------------------------------------------------------------------+
import logging, logging.config, sys, json, threading, pathlib, logging.handlers
from efconstants import *

#------------------------------------------------------------------------------+
# Globals for singleton use
ef_logging_initialized : bool = False
ef_log_config : dict = None
_logging_lock = threading.Lock()
#------------------------------------------------------------------------------+
#region get_ef_log_config()
def get_ef_log_config(config_file:str=EF_LOG_CONFIG_FILE,
                      refresh:bool=False) -> dict:
    """Load the dictConfig logging configuration from a JSON file.
    The parsed configuration is cached; refresh=True re-reads the file."""
    global ef_log_config
    try:
        if ef_log_config is not None and not refresh:
            return ef_log_config
        config_file = pathlib.Path(config_file)
        if not config_file.exists():
            raise FileNotFoundError(f"Logging configuration file not found: {config_file}")
        with open(config_file, "r") as f:
            config = json.load(f)
        for handler in config.get("handlers", {}).values():
            if "filename" in handler:
                pathlib.Path(handler["filename"]).parent.mkdir(parents=True, exist_ok=True)
        logging.config.dictConfig(config)
        ef_log_config = config
        return ef_log_config
    except Exception as e:
        e.add_note(f"Error in get_ef_log_config() for '{config_file}'")
        raise
#endregion get_ef_log_config()
#------------------------------------------------------------------------------+
#region ef_logging_setup()
def ef_logging_setup(logger_name: str = EF_APP_NAME,
                     console_level: str = None) -> logging.Logger:
    """Set up logging for stderr and a log file (thread-safe singleton).
    console_level adjusts the console handler on every call, so a CLI run can
    raise or lower verbosity after modules have imported the logger."""
    global ef_logging_initialized
    logger = None
    try:
        if logger_name == EF_TEST_EXCEPTION_LOGGER_NAME:
            logger = logging.getLogger(EF_APP_NAME)
            _ = 1/0 # Force an exception to test the exception logger

        with _logging_lock:
            logger = logging.getLogger(logger_name)
            logger.setLevel(logging.DEBUG)
            if ef_logging_initialized:
                if console_level is not None:
                    _set_console_level(logger, console_level)
                return logger

            fmtstr = "{asctime}.{msecs:03.0f}:{levelname}:[{process}:{thread}]:" + \
                "{module}.{funcName}() {message}"
            formatter = logging.Formatter(
                fmt=fmtstr,
                datefmt="%Y-%m-%d %H:%M:%S",
                style="{"
            )

            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.set_name("console")
            console_handler.setLevel(console_level or EF_DEFAULT_CONSOLE_LOG_LEVEL)
            console_handler.setFormatter(formatter)

            pathlib.Path(EF_LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(
                EF_LOG_FILE, mode="a", maxBytes=1_000_000, backupCount=5)
            file_handler.set_name("file")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)

            logger.addHandler(console_handler)
            logger.addHandler(file_handler)
            logger.propagate = False
            logger.debug("=" * 78)
            logger.debug(f"Initialized logging handlers for '{logger_name}': " + \
                         f"{logger.handlers}")
            ef_logging_initialized = True
            return logger
    except Exception as e:
        m1 = f"Error in ef_logging_setup for requested logger: '{logger_name}'"
        m2 = f"Exception: {e}"
        _ = logger.debug(m1) if logger is not None else print(m1, file=sys.stderr)
        _ = logger.debug(m2) if logger is not None else print(m2, file=sys.stderr)
        raise

def _set_console_level(logger: logging.Logger, level: str) -> None:
    for handler in logger.handlers:
        if handler.get_name() == "console":
            handler.setLevel(level)
#endregion ef_logging_setup()
#------------------------------------------------------------------------------+
#region EFLogger Class - A LoggerAdapter
class EFLogger(logging.LoggerAdapter):
    """
    A LoggerAdapter that tags records with the name of the container class
    making the logging calls.

    PARAMETERS
    ----------
    logger : logging.Logger
        The logger instance to be used for logging.
    container : str, optional
        Name of the class or module making the logging calls.
    """
    def __init__(self, logger: logging.Logger, container: str = None):
        super().__init__(logger, {'cn': container or 'noContainerName'})

    def process(self, msg: str, kwargs):
        """Prefix the message with the container name."""
        kwargs.setdefault('extra', {})['cn'] = self.extra['cn']
        return f"[{self.extra['cn']}] {msg}", kwargs
#endregion EFLogger Class - A LoggerAdapter
#------------------------------------------------------------------------------+
#region ClassLogger
class ClassLogger:
    """Mixin giving instances a logger tagged with their class name."""

    @property
    def logger(self) -> EFLogger:
        return EFLogger(logging.getLogger(EF_APP_NAME), self.__class__.__name__)
#endregion ClassLogger
#------------------------------------------------------------------------------+
