#-----------------------------------------------------------------------------+
# test_efmain.py
#-----------------------------------------------------------------------------+
import json, pytest
from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from view.efcli import EFView
from viewmodel.main_efviewmodel import MainEFViewModel
import efmain
from efmain import Application as App

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

#-----------------------------------------------------------------------------+
#region test_application_class()
def test_application_class(capsys):
    app = App()
    assert isinstance(app.efv, EFView), f"efv is of type {type(app.efv)}"
    assert isinstance(app.efvm, MainEFViewModel), f"efvm is of type {type(app.efvm)}"
    assert app.efv.datacontext is app.efvm, "view is not bound to the viewmodel"
    code = app.run(["degree", "--disc", "-7", "--conductor", "12"])
    assert code == EF_EXIT_OK, f"exit code {code}"
    assert json.loads(capsys.readouterr().out)["degree"] == 8

def test_main_exits_with_code(monkeypatch, capsys):
    monkeypatch.setattr("sys.argv", [EF_CLI_NAME, "degree", "--disc", "-12"])
    with pytest.raises(SystemExit) as exc:
        efmain.main()
    assert exc.value.code == EF_EXIT_FAILURE
    assert json.loads(capsys.readouterr().out)["error"] == "NotFundamental"
#endregion test_application_class()
#-----------------------------------------------------------------------------+
