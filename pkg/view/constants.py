#-----------------------------------------------------------------------------+
# Subcommand names of the etaforge CLI
EFV_CMD_EXPAND = "expand"
EFV_CMD_LIGOZAT = "ligozat"
EFV_CMD_CUSP_ORDERS = "cusp-orders"
EFV_CMD_VERIFY_IDENTITIES = "verify-identities"
EFV_CMD_DECOMPOSE = "decompose"
EFV_CMD_J4_RELATION = "j4-relation"
EFV_CMD_CLASS_INVARIANT = "class-invariant"
EFV_CMD_MIN_POLY = "min-poly"
EFV_CMD_DEGREE = "degree"
EFV_CMD_VERIFY_SIGN_FLIP = "verify-sign-flip"
EFV_CMD_ENUMERATE = "enumerate"
EFV_CMD_COSET_REPS = "coset-reps"
EFV_CMD_TOWER_SPLIT = "tower-split"
EFV_CMD_INTEGRALITY = "integrality"
#-----------------------------------------------------------------------------+
EFV_DESCRIPTION = "Exact q-series, eta-quotient and CM class invariant computations."
EFV_COMMAND_HELP = {
    EFV_CMD_EXPAND: "q-expansion of an eta-quotient",
    EFV_CMD_LIGOZAT: "Ligozat criteria for an eta-quotient on Gamma0(N)",
    EFV_CMD_CUSP_ORDERS: "orders of an eta-quotient at the cusps of Gamma0(N)",
    EFV_CMD_VERIFY_IDENTITIES: "run the Siegel, h_n and Weierstrass identity suite",
    EFV_CMD_DECOMPOSE: "write a form on Gamma0(2^n) as a sum of eta-quotients",
    EFV_CMD_J4_RELATION: "rational relation between j(4t) and g04",
    EFV_CMD_CLASS_INVARIANT: "256 eta(N t)^8 / eta((N/4) t)^8 at tau_K",
    EFV_CMD_MIN_POLY: "integer minimal polynomial of the class invariant",
    EFV_CMD_DEGREE: "class number, ring class field degree and coset count",
    EFV_CMD_VERIFY_SIGN_FLIP: "check that W_{K,2^m} flips the sign of h_m(tau_K)",
    EFV_CMD_ENUMERATE: "holomorphic eta-quotients of a level and weight",
    EFV_CMD_COSET_REPS: "coset representatives of W_{K,N} and their SL2(Z) lifts",
    EFV_CMD_TOWER_SPLIT: "split an eta-quotient at level 2^n over h_n",
    EFV_CMD_INTEGRALITY: "monic integer polynomial of M eta(M tau_K)^2 / eta(tau_K)^2",
}
EFV_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
EFV_TEXT_INDENT = "  "
EFV_ENUMERATE_BOUND = 8
#-----------------------------------------------------------------------------+
