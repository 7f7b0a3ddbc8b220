#-----------------------------------------------------------------------------+
# efcli.py - the etaforge command line: parsing, rendering and exit codes
#-----------------------------------------------------------------------------+
import argparse, json, sys
from fractions import Fraction

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup, ClassLogger
from ef_utilities.ef_utils import parse_exps, to_fraction
from efconfig.efconfig import EFConfig, RunConfig
from model.efmodelerrors import EtaForgeError
from view.constants import *
from viewmodel.main_efviewmodel import CommandResult, MainEFViewModel

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

# Errors a computation reports; each maps to exit code 1
REPORTED_ERRORS = (EtaForgeError, ArithmeticError, LookupError, ValueError, TypeError)

#-----------------------------------------------------------------------------+
#region argument types
def _exps_arg(text: str) -> dict:
    try:
        return parse_exps(text)
    except (TypeError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e))

def _rational_list_arg(text: str) -> list:
    try:
        return [to_fraction(s) for s in text.split(",") if s.strip()]
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"invalid rational list '{text}': {e}")

def _int_list_arg(text: str) -> list:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid integer list '{text}': {e}")

def _power_of_two_arg(text: str) -> int:
    level = int(text)
    if level < 4 or level & (level - 1):
        raise argparse.ArgumentTypeError(f"level must be a power of 2 at least 4, not {level}")
    return level
#endregion argument types
#-----------------------------------------------------------------------------+
#region parser
def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, help="decimal digits of precision")
    common.add_argument("--trunc", type=int, help="q-expansion truncation")
    common.add_argument("--degree-bound", type=int, dest="degree_bound",
                        help="monomial degree bound for decompositions")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const=EF_FORMAT_JSON)
    fmt.add_argument("--text", dest="format", action="store_const", const=EF_FORMAT_TEXT)
    common.add_argument("--out", metavar="PATH", help="write the report to PATH")
    common.add_argument("--log-level", dest="log_level", choices=EFV_LOG_LEVELS,
                        help="console log level")
    common.add_argument("--config", default=EF_DEFAULT_CONFIG_FILE, help="configuration file")
    return common

def _add_quotient_args(p: argparse.ArgumentParser, level_type=int) -> None:
    p.add_argument("--level", type=level_type, required=True)
    p.add_argument("--exps", type=_exps_arg, required=True, metavar="d:m[,d:m...]")

def _add_order_args(p: argparse.ArgumentParser, conductor: bool = True) -> None:
    p.add_argument("--disc", type=int, required=True, help="fundamental discriminant d_K")
    if conductor:
        p.add_argument("--conductor", type=int, required=True, help="level N")

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=EF_CLI_NAME, description=EFV_DESCRIPTION)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    common = _common_parser()

    def add(name: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=EFV_COMMAND_HELP[name])

    for name in (EFV_CMD_EXPAND, EFV_CMD_LIGOZAT, EFV_CMD_CUSP_ORDERS):
        _add_quotient_args(add(name))
    p = add(EFV_CMD_VERIFY_IDENTITIES)
    p.add_argument("--ns", type=_int_list_arg, help="tower levels n for the h_n checks")
    p = add(EFV_CMD_DECOMPOSE)
    p.add_argument("--level", type=_power_of_two_arg, required=True)
    p.add_argument("--exps", type=_exps_arg, action="append", required=True,
                   metavar="d:m[,d:m...]", help="repeat for a sum of quotients")
    p.add_argument("--coeffs", type=_rational_list_arg, help="coefficients of the quotients")
    p.add_argument("--weight", type=int)
    add(EFV_CMD_J4_RELATION)
    for name in (EFV_CMD_CLASS_INVARIANT, EFV_CMD_MIN_POLY, EFV_CMD_COSET_REPS):
        _add_order_args(add(name))
    p = add(EFV_CMD_DEGREE)
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--conductor", type=int, default=1)
    p = add(EFV_CMD_VERIFY_SIGN_FLIP)
    p.add_argument("--m", type=int, required=True, help="conductor 2^m, m >= 3")
    _add_order_args(p, conductor=False)
    p = add(EFV_CMD_ENUMERATE)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--bound", type=int, default=EFV_ENUMERATE_BOUND)
    _add_quotient_args(add(EFV_CMD_TOWER_SPLIT), level_type=_power_of_two_arg)
    p = add(EFV_CMD_INTEGRALITY)
    p.add_argument("--multiplier", type=int, required=True, help="M")
    _add_order_args(p, conductor=False)
    return parser
#endregion parser
#-----------------------------------------------------------------------------+
#region rendering
def render_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"

def _text_lines(data, indent: str = "") -> list:
    lines = []
    if isinstance(data, dict):
        for key, value in data.items():
            nested = isinstance(value, dict) and value or \
                isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value)
            if nested:
                lines.append(f"{indent}{key}:")
                lines += _text_lines(value, indent + EFV_TEXT_INDENT)
            elif isinstance(value, list):
                lines.append(f"{indent}{key}: {', '.join(str(v) for v in value)}")
            else:
                lines.append(f"{indent}{key}: {value}")
    elif isinstance(data, list):
        for item in data:
            sub = _text_lines(item, indent + EFV_TEXT_INDENT)
            if sub:
                lines.append(f"{indent}- {sub[0].lstrip()}")
                lines += sub[1:]
    else:
        lines.append(f"{indent}{data}")
    return lines

def render_text(data) -> str:
    return "\n".join(_text_lines(data)) + "\n"

def render(data, fmt: str) -> str:
    return render_text(data) if fmt == EF_FORMAT_TEXT else render_json(data)

def error_report(e: Exception) -> dict:
    details = e.details() if isinstance(e, EtaForgeError) else {}
    return {"error": type(e).__name__, "message": str(e),
            "details": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in details.items()}}
#endregion rendering
#-----------------------------------------------------------------------------+
#region EFView Class
class EFView(ClassLogger):
    """
    Command line View of EtaForge. Parses argv, resolves the RunConfig,
    hands the command to its datacontext (a MainEFViewModel) and writes the
    rendered report.

    Properties
    ----------
    datacontext : MainEFViewModel
        The ViewModel executing commands.
    """
    def __init__(self, datacontext: MainEFViewModel = None):
        self.datacontext = datacontext or MainEFViewModel()
        self.parser = build_parser()

    def resolve_config(self, args) -> RunConfig:
        return RunConfig.resolve(EFConfig(args.config), digits=args.digits, trunc=args.trunc,
                                 degree_bound=args.degree_bound, output=args.out,
                                 format=args.format, console_level=args.log_level)

    def write(self, text: str, config: RunConfig) -> None:
        if config.output:
            with open(config.output, "w") as f:
                f.write(text)
            self.logger.info(f"report written to '{config.output}'")
        else:
            sys.stdout.write(text)

    def run(self, argv: list = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EF_EXIT_USAGE
        try:
            config = self.resolve_config(args)
        except (TypeError, ValueError) as e:
            print(f"{EF_CLI_NAME}: error: {e}", file=sys.stderr)
            return EF_EXIT_USAGE
        ef_logging_setup(EF_APP_NAME, config.console_level)
        self.datacontext.run_config = config
        self.datacontext.initialize()
        try:
            result: CommandResult = self.datacontext.execute(args.command, args)
        except REPORTED_ERRORS as e:
            self.logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
            self.write(render(error_report(e), config.format), config)
            return EF_EXIT_FAILURE
        finally:
            self.datacontext.stop()
        self.write(render(result.report, config.format), config)
        return EF_EXIT_OK if result.ok else EF_EXIT_FAILURE
#endregion EFView Class
#-----------------------------------------------------------------------------+
def run(argv: list = None) -> int:
    """Entry point of the etaforge command; returns the exit code."""
    return EFView().run(argv)
#-----------------------------------------------------------------------------+
