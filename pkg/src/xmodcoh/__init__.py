"""Exact cohomology of finite crossed modules (strict 2-groups).

Core layers: finite groups as index tables (``groups``), crossed modules and
their morphisms (``crossed``), the enumerated nerve with exact face maps
(``nerve``), sparse exact linear algebra and cohomology (``linalg``,
``homology``), finite and arithmetic group cohomology (``groupcoh``), and the
symbolic graded-dimension calculator (``structural``).  The ``cli`` module
exposes everything behind a declarative input format.
"""

from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    direct_product,
    kernel,
    cokernel,
    make_cyclic,
    make_table_group,
    trivial_group,
)
from .crossed import (
    CrossedModule,
    CrossedModuleMorphism,
    cokernel_projection,
    homotopy_invariants,
    is_equivalence,
    kernel_of_morphism,
    validate,
)
from .nerve import (
    BudgetExceeded,
    NerveLevels,
    NerveSimplex,
    NormalizedCoordinates,
    check_kan,
    degeneracy,
    face,
    level_count,
)

__version__ = "0.1.0"
