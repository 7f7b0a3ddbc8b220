#-----------------------------------------------------------------------------+
from dataclasses import dataclass
from fractions import Fraction

from efconstants import *
from ef_logging.ef_logging import ef_logging_setup, ClassLogger
from ef_utilities.ef_utils import fraction_str
#------------------------------------------------------------------------------+
#region ef_logging_setup()
logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")
#endregion ef_logging_setup()
#------------------------------------------------------------------------------+
from efconfig.efconfig import RunConfig
from model.cm_numerics import ImagQuadOrder, class_invariant, realness_holds
from model.decomposition import (EtaCombination, decompose_form, j4_hauptmodul_relation,
                                 sturm_truncation, tower_split)
from model.elliptic_special import run_identity_suite
from model.eta_quotients import (EtaQuotient, cusp_orders, cusp_total_order,
                                 enumerate_holomorphic, eta_quotient_series,
                                 is_holomorphic, ligozat_check)
from model.reciprocity import (build_W, class_number, coset_reps, degree_formula,
                               integrality_check, relative_degree, sign_flip_matrix,
                               sl2_lift, stable_min_poly, verify_sign_flip, w_closure_check)
from view.constants import *
from viewmodel.base_efviewmodel.efviewmodel import EFViewModel

@dataclass(frozen=True)
class CommandResult:
    """Report of one subcommand; ok False maps to exit code 1."""
    command: str
    report: dict
    ok: bool = True

def tower_exponent(level: int) -> int:
    """n with level = 2^n, n >= 2."""
    n = level.bit_length() - 1
    if level <= 0 or level != 2 ** n or n < 2:
        raise ValueError(f"level must be a power of 2 at least 4, not {level}")
    return n

class MainEFViewModel(EFViewModel, ClassLogger):
    '''MainEFViewModel is the concrete ViewModel of EtaForge. It turns parsed
    CLI arguments plus the resolved RunConfig into model calls and returns
    JSON-ready reports. Each handler returns (report, ok); ok is False when
    a verification ran to completion and failed.
    '''
    #--------------------------------------------------------------------------+
    #region __init__() method
    def __init__(self, run_config: RunConfig = None):
        self._run_config: RunConfig = run_config or RunConfig()
        self._initialized: bool = False
        self._handlers = {
            EFV_CMD_EXPAND: self.expand,
            EFV_CMD_LIGOZAT: self.ligozat,
            EFV_CMD_CUSP_ORDERS: self.cusp_orders,
            EFV_CMD_VERIFY_IDENTITIES: self.verify_identities,
            EFV_CMD_DECOMPOSE: self.decompose,
            EFV_CMD_J4_RELATION: self.j4_relation,
            EFV_CMD_CLASS_INVARIANT: self.class_invariant,
            EFV_CMD_MIN_POLY: self.min_poly,
            EFV_CMD_DEGREE: self.degree,
            EFV_CMD_VERIFY_SIGN_FLIP: self.verify_sign_flip,
            EFV_CMD_ENUMERATE: self.enumerate_quotients,
            EFV_CMD_COSET_REPS: self.coset_reps,
            EFV_CMD_TOWER_SPLIT: self.tower_split,
            EFV_CMD_INTEGRALITY: self.integrality,
        }
        logger.debug(f"MainEFViewModel created with {self._run_config}")
    #endregion __init__() method
    #--------------------------------------------------------------------------+
    #region MainEFViewModel Properties (from EFViewModel abstract base class)
    @property
    def run_config(self) -> RunConfig:
        return self._run_config

    @run_config.setter
    def run_config(self, value: RunConfig):
        if not isinstance(value, RunConfig):
            t = type(value).__name__
            raise TypeError(f"run_config requires type:RunConfig, not type: {t}")
        self._run_config = value

    @property
    def initialized(self) -> bool:
        return self._initialized

    @property
    def commands(self) -> list:
        return list(self._handlers)
    #endregion MainEFViewModel Properties (from EFViewModel abstract base class)
    #--------------------------------------------------------------------------+
    #region MainEFViewModel Methods (from EFViewModel abstract base class)
    def initialize(self) -> None:
        self._initialized = True

    def stop(self) -> None:
        self._initialized = False
        logger.debug(f"MainEFViewModel stopped")

    def execute(self, command: str, args) -> CommandResult:
        handler = self._handlers.get(command)
        if handler is None:
            raise ValueError(f"Unknown command '{command}'")
        if not self._initialized:
            self.initialize()
        self.logger.info(f"execute('{command}') with {self._run_config}")
        report, ok = handler(args)
        if not ok:
            self.logger.warning(f"'{command}' reported a failed check")
        return CommandResult(command, report, ok)
    #endregion MainEFViewModel Methods (from EFViewModel abstract base class)
    #--------------------------------------------------------------------------+
    #region eta-quotient commands
    @staticmethod
    def _quotient(args) -> EtaQuotient:
        exps = args.exps[0] if isinstance(args.exps, list) else args.exps
        return EtaQuotient(args.level, exps)

    def expand(self, args) -> tuple:
        E = self._quotient(args)
        series = eta_quotient_series(E, self._run_config.trunc)
        return {"quotient": E.to_dict(), "weight": fraction_str(E.weight),
                "series": series.to_dict()}, True

    def ligozat(self, args) -> tuple:
        E = self._quotient(args)
        return {"quotient": E.to_dict(), **ligozat_check(E).to_dict()}, True

    def cusp_orders(self, args) -> tuple:
        E = self._quotient(args)
        orders = [{"cusp": f"{a}/{c}", "order": fraction_str(o)}
                  for (a, c), o in cusp_orders(E).items()]
        return {"quotient": E.to_dict(), "orders": orders,
                "total": fraction_str(cusp_total_order(E)), "holomorphic": is_holomorphic(E)}, True

    def enumerate_quotients(self, args) -> tuple:
        bound = args.bound or EFV_ENUMERATE_BOUND
        found = enumerate_holomorphic(args.level, args.weight, bound)
        return {"level": args.level, "weight": args.weight, "bound": bound,
                "count": len(found), "quotients": [E.to_dict() for E in found]}, True

    def verify_identities(self, args) -> tuple:
        ns = args.ns or list(range(3, 9))
        reports = run_identity_suite(self._run_config.trunc, ns)
        ok = all(r["pass"] for r in reports)
        return {"trunc": self._run_config.trunc, "reports": reports, "pass": ok}, ok
    #endregion eta-quotient commands
    #--------------------------------------------------------------------------+
    #region decomposition commands
    def decompose(self, args) -> tuple:
        n = tower_exponent(args.level)
        quotients = [EtaQuotient(args.level, e) for e in args.exps]
        coeffs = args.coeffs or [Fraction(1)] * len(quotients)
        if len(coeffs) != len(quotients):
            raise ValueError(f"{len(coeffs)} coefficients for {len(quotients)} quotients")
        weight = args.weight if args.weight is not None else quotients[0].weight
        if Fraction(weight).denominator != 1:
            raise ValueError(f"weight {fraction_str(weight)} is not an integer")
        weight = int(weight)
        D = self._run_config.degree_bound
        trunc = sturm_truncation(args.level, weight, D) + weight // 2
        target = eta_quotient_series(quotients[0], trunc).scale(coeffs[0])
        for c, E in zip(coeffs[1:], quotients[1:]):
            target = target + eta_quotient_series(E, trunc).scale(c)
        comb = decompose_form(target, n, weight, D)
        given = EtaCombination(args.level, weight, tuple(zip(coeffs, quotients)))
        return {"target": given.to_dict(), "degree_bound": D, "trunc": trunc,
                "decomposition": comb.to_dict()}, True

    def tower_split(self, args) -> tuple:
        n = tower_exponent(args.level)
        E = self._quotient(args)
        D = self._run_config.degree_bound
        trunc = sturm_truncation(args.level, 0, D)
        c0, c1 = tower_split(eta_quotient_series(E, trunc), n, D)
        return {"quotient": E.to_dict(), "n": n, "degree_bound": D,
                "c0": c0.to_dict(), "c1": c1.to_dict()}, True

    def j4_relation(self, args) -> tuple:
        rel = j4_hauptmodul_relation(self._run_config.degree_bound)
        return {**rel.to_dict(), "pole_order": rel.pole_order}, True
    #endregion decomposition commands
    #--------------------------------------------------------------------------+
    #region CM and reciprocity commands
    @staticmethod
    def _order(args) -> ImagQuadOrder:
        return ImagQuadOrder(args.disc, getattr(args, "conductor", None) or 1)

    def class_invariant(self, args) -> tuple:
        order = self._order(args)
        digits = self._run_config.digits
        value = class_invariant(order, digits)
        return {"order": order.to_dict(), "value": value.to_dict(),
                "real": realness_holds(value, digits)}, True

    def min_poly(self, args) -> tuple:
        order = self._order(args)
        report = stable_min_poly(order, digits=self._run_config.digits)
        return report.to_dict(), True

    def degree(self, args) -> tuple:
        order = self._order(args)
        cosets = len(coset_reps(order)) if order.conductor > 1 else 1
        return {"order": order.to_dict(), "class_number": class_number(order.d_K),
                "degree": degree_formula(order), "cosets": cosets}, True

    def coset_reps(self, args) -> tuple:
        order = self._order(args)
        reps = [{"d": d, "alpha": alpha.rows, "lift": sl2_lift(alpha).rows}
                for d, alpha in coset_reps(order)]
        return {"order": order.to_dict(), "W_size": len(build_W(order)),
                "closed": w_closure_check(order), "count": len(reps), "reps": reps}, True

    def verify_sign_flip(self, args) -> tuple:
        order = ImagQuadOrder(args.disc, 2 ** args.m)
        ok = verify_sign_flip(args.m, order, self._run_config.digits)
        return {"m": args.m, "order": order.to_dict(),
                "matrix": sign_flip_matrix(order, args.m).rows,
                "relative_degree": relative_degree(order, args.m), "pass": ok}, ok

    def integrality(self, args) -> tuple:
        report = integrality_check(args.multiplier, ImagQuadOrder(args.disc),
                                   self._run_config.digits)
        return report.to_dict(), report.monic_integral and report.norm_divides
    #endregion CM and reciprocity commands
    #--------------------------------------------------------------------------+
