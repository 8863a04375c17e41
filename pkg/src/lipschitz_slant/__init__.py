from .contexts import LineChain, LineContext, ProductChain, ProductContext, SlantContext, alpha_on_cell
from .families import AlphaMap, CocycleAlpha, PointAlpha, TranslationAlpha
from .geometry import (
    GENERIC_DENOMINATOR,
    GenericPointStream,
    SupportCocycle,
    chain_boundary,
    omega_eval,
    staircase,
    staircase_chain,
    triangulate_product,
)
from .slant import (
    ClassReport,
    alpha_cap,
    class_pairings,
    contributing_cosets,
    product_context,
    product_with_line,
    slant,
    slant_table,
    slant_value,
    support_enumerate,
)
