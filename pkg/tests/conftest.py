import logging
from efconstants import EF_LOG_FILE, EF_APP_NAME
from ef_logging.ef_logging import *

def pytest_configure(config):
    """
    EtaForge/tests: Configure pytest dynamically.
    Use the app's log file and avoid duplicate logging to console as well.
    """
    me = "conftest.py:pytest_configure(): "
    root_logger = logging.getLogger()
    root_before_setup = f"{me}Logger('Root') ({len(root_logger.handlers)})" + \
          f" logging handlers before ef_logging_setup(): {root_logger.handlers}"

    # The dictConfig tests configure logging themselves
    if config.args and config.args[0].find("test_ef_log_config") > 0:
        print(f"{me}running test_ef_log_config*, skipping ef_logging_setup()")
        print(root_before_setup)
        return

    logger = ef_logging_setup(EF_APP_NAME)
    logger.debug(root_before_setup)
    logger.debug(f"Logger('{EF_APP_NAME}') ({len(logger.handlers)}) " + \
                 f" logging handlers after ef_logging_setup(): {logger.handlers}")
    logger.debug(f"Completed pytest dynamic logging configuration.")
