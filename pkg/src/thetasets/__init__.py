"""Integer sets defined by a threshold on the next prime factor.

A function ``theta`` with ``theta(1) >= 2`` and ``theta(n) >= P+(n)``
defines the set B_theta of integers ``p1^a1 ... pk^ak`` (p1 < ... < pk)
with ``p_i <= theta(p1^a1 ... p_{i-1}^a_{i-1})``.  Prime powers, almost
primes, smooth numbers, t-dense numbers and practical numbers all arise
this way.  The package enumerates and counts these sets, checks exact
counting identities on them, and estimates their density constants.
"""

from .arith import (
    Factorization,
    PrimeTables,
    build_prime_tables,
    euler_phi,
    factorize,
    mobius,
    omega,
    pplus,
    sigma,
    smooth_count,
)
from .census import (
    ResidueHistogram,
    SandwichReport,
    count,
    count_class,
    count_gcd_class,
    count_multiples,
    histogram,
    mobius_rhs,
    r_count,
    r_empirical,
    sandwich_check,
)
from .density import DensityEstimate, MertensTables, build_mertens, c_q, c_theta, r_q, r_qa, table_rq
from .errors import (
    PreconditionError,
    ResourceLimitError,
    SpecParseError,
    TableLimitError,
    ThetaSetError,
    WordOverflowError,
)
from .genset import MemberStream, enumerate_members, is_member, members
from .laws import (
    LawReport,
    ProgressionClass,
    Verdict,
    classify_progression,
    closure_check,
    equidist_report,
    verify_inclusions,
)
from .theta import (
    INF,
    AlmostPrime,
    Dense,
    Practical,
    PrimePowers,
    QLifted,
    Smooth,
    ThetaSpec,
    lift_q,
    parse_theta,
    prime_fits,
    theta_eval,
    theta_of_n,
)

__version__ = "0.1.0"
