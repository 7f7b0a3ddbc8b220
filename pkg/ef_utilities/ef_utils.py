#------------------------------------------------------------------------------+
# ef_utils.py
import os, sys, inspect
from fractions import Fraction
from logging import Logger
from typing import Iterable
from efconstants import *
#------------------------------------------------------------------------------+
#region Exact rational helpers
# Rationals cross every external boundary as decimal strings: "p" or "p/q".
# These functions are the only place the string form is produced or parsed.
def to_fraction(value) -> Fraction:
    """Convert int, Fraction or a decimal rational string to a Fraction."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            e.add_note(f"{type(e).__name__}: Cannot convert '{value}' to a rational")
            raise
    t = type(value).__name__
    raise TypeError(f"Requires int, Fraction or str rational, not type: {t}")

def fraction_str(value) -> str:
    """Decimal string form of a rational: '7', '-1/24'."""
    f = to_fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

def fractions_str(values: Iterable) -> list[str]:
    return [fraction_str(v) for v in values]
#endregion Exact rational helpers
#------------------------------------------------------------------------------+
#region Validation helpers
def validate_int(value, name: str, minimum: int = None) -> int:
    """Return value if it is an int (not bool) at least minimum."""
    if isinstance(value, bool) or not isinstance(value, int):
        t = type(value).__name__
        raise TypeError(f"{name} requires type:int, not type: {t}")
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, not {value}")
    return value

def validate_positive_int(value, name: str) -> int:
    return validate_int(value, name, 1)

def validate_positive_fraction(value, name: str) -> Fraction:
    f = to_fraction(value)
    if f <= 0:
        raise ValueError(f"{name} must be positive, not {fraction_str(f)}")
    return f
#endregion Validation helpers
#------------------------------------------------------------------------------+
#region Parsing helpers
def parse_exps(text: str) -> dict[int, int]:
    """Parse an exponent map 'd:m,d:m' into {d: m}; '' is the empty map."""
    if not isinstance(text, str):
        t = type(text).__name__
        raise TypeError(f"exps requires type:str, not type: {t}")
    exps: dict[int, int] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        d, sep, m = item.partition(":")
        if not sep:
            raise ValueError(f"Invalid exponent entry '{item}', expected d:m")
        try:
            d_val, m_val = int(d), int(m)
        except ValueError as e:
            e.add_note(f"Invalid exponent entry '{item}'")
            raise
        if d_val in exps:
            raise ValueError(f"Divisor {d_val} given twice in '{text}'")
        exps[d_val] = m_val
    return exps
#endregion Parsing helpers
#------------------------------------------------------------------------------+
#region Environment helpers
def is_running_in_pytest() -> bool:
    """Check if the code is running under pytest."""
    return "pytest" in sys.modules

def ef_env_info(module_name: str, logger: Logger = None) -> tuple:
    """Return (module_name, caller_file, cwd, run_mode) and log it.
    run_mode is 'pytest', 'direct' or 'imported'."""
    caller = inspect.stack()[1].filename if len(inspect.stack()) > 1 else "unknown"
    if is_running_in_pytest():
        run_mode = "pytest"
    elif module_name == "__main__":
        run_mode = "direct"
    else:
        run_mode = "imported"
    info = (module_name, caller, os.getcwd(), run_mode)
    if logger is not None:
        logger.debug(f"module='{module_name}', caller='{caller}', " + \
                     f"cwd='{info[2]}', run_mode='{run_mode}'")
    return info
#endregion Environment helpers
#------------------------------------------------------------------------------+
