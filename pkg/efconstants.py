#------------------------------------------------------------------------------+
# General application constants for the EtaForge application
EF_APP_NAME = "EtaForge"
EF_CLI_NAME = "etaforge"
EF_TEST_EXCEPTION_LOGGER_NAME = "TestExceptionLogger"
EF_DEFAULT_CONFIG_FILE = "efconfig.ini" # default config file for the application
EF_LOG_DIR = "logs"
EF_LOG_FILE = EF_LOG_DIR + "/" + EF_APP_NAME + ".log"
EF_LOG_CONFIG_FILE = "ef_logging/ef_log_config.json" # logging configuration file
EF_DEFAULT_CONSOLE_LOG_LEVEL = "WARNING"
#------------------------------------------------------------------------------+
# Environment overrides
EF_ENV_DIGITS = "ETAFORGE_DIGITS"
#------------------------------------------------------------------------------+
# Run configuration defaults and floors
EF_DEFAULT_DIGITS = 300
EF_MIN_DIGITS = 50
EF_DEFAULT_TRUNC = 200
EF_MIN_TRUNC = 20
EF_DEFAULT_DEGREE_BOUND = 6
EF_FORMAT_JSON = "json"
EF_FORMAT_TEXT = "text"
#------------------------------------------------------------------------------+
# CLI exit codes
EF_EXIT_OK = 0
EF_EXIT_FAILURE = 1
EF_EXIT_USAGE = 2
#------------------------------------------------------------------------------+
