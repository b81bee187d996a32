from .extragradient import (
    ExtragradientSolver,
    SolveReport,
    default_step,
    solve_svwe,
    solve_vne,
    vi_residual,
)
from .problem import (
    VIProblem,
    check_player_convexity,
    own_impact,
    svwe_lipschitz,
    svwe_problem,
    vne_problem,
)
from .projection import project_coupled, project_coupling, project_product

__all__ = [
    "VIProblem",
    "SolveReport",
    "ExtragradientSolver",
    "svwe_problem",
    "vne_problem",
    "svwe_lipschitz",
    "check_player_convexity",
    "own_impact",
    "project_product",
    "project_coupling",
    "project_coupled",
    "default_step",
    "vi_residual",
    "solve_svwe",
    "solve_vne",
]
