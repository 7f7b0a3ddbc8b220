#------------------------------------------------------------------------------+
import sys
from efconstants import *
import ef_utilities.ef_utils as efu
from ef_logging.ef_logging import ef_logging_setup
#------------------------------------------------------------------------------+
#region ef_logging_setup()
# Configure logging before importing the primary application modules
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#------------------------------------------------------------------------------+
from view.efcli import EFView
from viewmodel.main_efviewmodel import MainEFViewModel

class Application:
    """EtaForge command line application"""
    def __init__(self):
        logger.info(f"Initializing Application")
        self.efvm = MainEFViewModel()
        self.efv = EFView(self.efvm)
        logger.debug(f"EFView and MainEFViewModel created")

    def run(self, argv: list = None) -> int:
        """Run one etaforge command and return its exit code."""
        efenv = efu.ef_env_info(__name__, logger)
        logger.debug(f"Running in {efenv[3]} mode")
        code = self.efv.run(argv)
        logger.info(f"Application exited with code {code}")
        return code

def main() -> None:
    sys.exit(Application().run(sys.argv[1:]))

if __name__ == "__main__":
    main()  # pragma: no cover
#------------------------------------------------------------------------------+
