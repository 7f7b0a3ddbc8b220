#-----------------------------------------------------------------------------+
# test_ef_utils.py
#-----------------------------------------------------------------------------+
import os, pytest
from fractions import Fraction
from efconstants import *
import ef_utilities.ef_utils as efu
from ef_logging.ef_logging import ef_logging_setup

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

#------------------------------------------------------------------------------+
#region Exact rational helpers
def test_to_fraction():
    assert efu.to_fraction(3) == 3 and efu.to_fraction(Fraction(1, 24)) == Fraction(1, 24)
    assert efu.to_fraction(" -1/24 ") == Fraction(-1, 24)
    with pytest.raises(TypeError): efu.to_fraction(True)
    with pytest.raises(TypeError): efu.to_fraction(0.5)
    with pytest.raises(TypeError): efu.to_fraction(None)
    with pytest.raises(ValueError): efu.to_fraction("one half")
    with pytest.raises(ZeroDivisionError): efu.to_fraction("1/0")

def test_fraction_str():
    assert efu.fraction_str(7) == "7"
    assert efu.fraction_str(Fraction(-2, 48)) == "-1/24"
    assert efu.fractions_str([1, Fraction(1, 2), "3/6"]) == ["1", "1/2", "1/2"]
#endregion Exact rational helpers
#------------------------------------------------------------------------------+
#region Validation helpers
def test_validate_int():
    assert efu.validate_int(5, "n") == 5
    assert efu.validate_int(3, "n", 3) == 3
    assert efu.validate_positive_int(1, "N") == 1
    with pytest.raises(TypeError): efu.validate_int(True, "n")
    with pytest.raises(TypeError): efu.validate_int(2.0, "n")
    with pytest.raises(ValueError): efu.validate_int(2, "n", 3)
    with pytest.raises(ValueError): efu.validate_positive_int(0, "N")
    assert efu.validate_positive_fraction("1/2", "trunc") == Fraction(1, 2)
    with pytest.raises(ValueError): efu.validate_positive_fraction(0, "trunc")
#endregion Validation helpers
#------------------------------------------------------------------------------+
#region Parsing helpers
def test_parse_exps():
    assert efu.parse_exps("1:-8,4:8") == {1: -8, 4: 8}
    assert efu.parse_exps(" 2 : 4 , 4:-8 ") == {2: 4, 4: -8}
    assert efu.parse_exps("") == {}
    with pytest.raises(ValueError): efu.parse_exps("1-8")
    with pytest.raises(ValueError): efu.parse_exps("1:a")
    with pytest.raises(ValueError): efu.parse_exps("1:2,1:3")
    with pytest.raises(TypeError): efu.parse_exps({1: 2})
#endregion Parsing helpers
#------------------------------------------------------------------------------+
#region Environment helpers
def test_ef_env_info():
    assert efu.is_running_in_pytest()
    info = efu.ef_env_info(__name__, logger)
    assert info[0] == __name__ and info[2] == os.getcwd()
    assert info[3] == "pytest", f"run mode {info[3]}"
#endregion Environment helpers
#------------------------------------------------------------------------------+
