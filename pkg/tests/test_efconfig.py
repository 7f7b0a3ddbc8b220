#-----------------------------------------------------------------------------+
# test_efconfig.py
#-----------------------------------------------------------------------------+
import pathlib, pytest
from dataclasses import replace
from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from efconfig.efconfig import EFConfig, RunConfig

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

@pytest.fixture
def ini_file(tmp_path):
    path = tmp_path / "efconfig.ini"
    path.write_text("[run]\ndigits = 120\ntrunc = 40\nformat = text\n\n" + \
                    "[logging]\nconsole_level = ERROR\n")
    return str(path)

#-----------------------------------------------------------------------------+
#region EFConfig
def test_efconfig_read_write(ini_file, tmp_path):
    config = EFConfig(ini_file)
    assert config.getint("run", "digits") == 120
    assert config.get("run", "missing", "fallback") == "fallback"
    config.set("run", "degree_bound", 4)
    config.set("extra", "key", "value")
    config.save()
    reread = EFConfig(ini_file)
    assert reread.getint("run", "degree_bound") == 4 and reread.get("extra", "key") == "value"
    empty = EFConfig(str(tmp_path / "absent.ini"))
    assert empty.getint("run", "digits", 7) == 7, "a missing file reads as empty"

def test_efconfig_invalid_integer(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[run]\ndigits = many\n")
    with pytest.raises(ValueError):
        EFConfig(str(path)).getint("run", "digits")

def test_default_config_file():
    config = EFConfig(str(pathlib.Path(__file__).parents[1] / EF_DEFAULT_CONFIG_FILE))
    assert config.getint("run", "digits") == EF_DEFAULT_DIGITS
    assert config.get("logging", "console_level") == EF_DEFAULT_CONSOLE_LOG_LEVEL
#endregion EFConfig
#-----------------------------------------------------------------------------+
#region RunConfig
def test_run_config_defaults_and_validation():
    rc = RunConfig()
    assert (rc.digits, rc.trunc, rc.degree_bound) == (300, 200, 6)
    assert rc.output is None and rc.format == EF_FORMAT_JSON
    with pytest.raises(ValueError): RunConfig(digits=49)
    with pytest.raises(ValueError): RunConfig(trunc=19)
    with pytest.raises(ValueError): RunConfig(degree_bound=0)
    with pytest.raises(ValueError): RunConfig(format="xml")
    with pytest.raises(TypeError): RunConfig(digits="300")
    with pytest.raises(TypeError): RunConfig(output=3)
    with pytest.raises(TypeError): RunConfig(300)

def test_run_config_precedence(ini_file):
    config = EFConfig(ini_file)
    rc = RunConfig.resolve(config, environ={})
    assert (rc.digits, rc.trunc, rc.format) == (120, 40, EF_FORMAT_TEXT)
    assert rc.console_level == "ERROR" and rc.degree_bound == EF_DEFAULT_DEGREE_BOUND
    rc = RunConfig.resolve(config, environ={EF_ENV_DIGITS: "150"})
    assert rc.digits == 150, "environment overrides the file"
    rc = RunConfig.resolve(config, environ={EF_ENV_DIGITS: "150"}, digits=80, trunc=None)
    assert rc.digits == 80 and rc.trunc == 40, "flags override the environment"
    assert RunConfig.resolve(environ={EF_ENV_DIGITS: ""}) == RunConfig()
    with pytest.raises(ValueError):
        RunConfig.resolve(environ={EF_ENV_DIGITS: "lots"})
    with pytest.raises(ValueError):
        RunConfig.resolve(environ={EF_ENV_DIGITS: "10"})
    with pytest.raises(TypeError):
        RunConfig.resolve(environ={}, precision=10)

def test_run_config_is_frozen():
    rc = RunConfig()
    with pytest.raises(AttributeError):
        rc.digits = 400
    assert replace(rc, digits=400).digits == 400
#endregion RunConfig
#-----------------------------------------------------------------------------+
