#------------------------------------------------------------------------------+
# test_main_efviewmodel.py
#------------------------------------------------------------------------------+
import pytest
from argparse import Namespace
from fractions import Fraction
from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
from efconfig.efconfig import RunConfig
from viewmodel.base_efviewmodel.efviewmodel import EFViewModel
from viewmodel.main_efviewmodel import CommandResult, MainEFViewModel, tower_exponent

#------------------------------------------------------------------------------+
#region test_viewmodel_constructor()
def test_viewmodel_constructor():
    vm = MainEFViewModel()
    assert isinstance(vm, EFViewModel), f"MainEFViewModel is of type {type(vm)}"
    assert vm.run_config == RunConfig(), f"default run_config {vm.run_config}"
    assert not vm.initialized
    vm.initialize()
    assert vm.initialized, "initialize() did not set initialized"
    vm.stop()
    assert not vm.initialized, "stop() left the viewmodel initialized"
    vm.run_config = RunConfig(digits=80)
    assert vm.run_config.digits == 80
    with pytest.raises(TypeError):
        vm.run_config = {"digits": 80}
    with pytest.raises(TypeError):
        EFViewModel()
#endregion test_viewmodel_constructor()
#------------------------------------------------------------------------------+
#region test_viewmodel_execute()
def test_viewmodel_execute():
    vm = MainEFViewModel(RunConfig(trunc=20))
    result = vm.execute("ligozat", Namespace(level=4, exps={1: -8, 4: 8}))
    assert isinstance(result, CommandResult) and result.ok and vm.initialized
    assert result.command == "ligozat" and result.report["passes"] is True
    result = vm.execute("expand", Namespace(level=4, exps=[{1: -8, 4: 8}]))
    assert result.report["series"]["trunc"] == "20"
    result = vm.execute("degree", Namespace(disc=-7, conductor=12))
    assert result.report["degree"] == 8 and result.report["cosets"] == 8
    with pytest.raises(ValueError):
        vm.execute("frobnicate", Namespace())
    assert set(vm.commands) >= {"expand", "min-poly", "integrality", "tower-split"}

def test_viewmodel_decompose_sum():
    vm = MainEFViewModel(RunConfig(degree_bound=2))
    args = Namespace(level=8, exps=[{1: -8, 4: 8}, {1: -16, 2: 24, 4: -8}],
                     coeffs=[Fraction(2), Fraction(-1, 2)], weight=None)
    report = vm.execute("decompose", args).report
    assert report["target"]["weight"] == 0 and len(report["target"]["terms"]) == 2
    assert report["decomposition"]["terms"], "no terms found"
    bad = Namespace(level=8, exps=[{1: 1}], coeffs=None, weight=None)
    with pytest.raises(ValueError):
        vm.execute("decompose", bad)

def test_tower_exponent():
    assert tower_exponent(4) == 2 and tower_exponent(64) == 6
    for level in (2, 6, 0, 12):
        with pytest.raises(ValueError):
            tower_exponent(level)
#endregion test_viewmodel_execute()
#------------------------------------------------------------------------------+
