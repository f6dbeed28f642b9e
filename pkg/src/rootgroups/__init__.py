"""Finite groups, wreath products, root classes and amalgam quotients."""

from .amalgam import (
    Amalgam,
    AmalgamHom,
    Certificate,
    certify,
    eval_word,
    generalized_direct_product,
    identity_amalgam,
    theorem2_build,
)
from .catalog import catalog_get
from .constructions import (
    direct_product,
    normal_closure,
    normal_core,
    quotient,
    wreath_context,
    wreath_group,
)
from .core import (
    DEFAULT_CAP,
    FiniteGroup,
    GroupHom,
    MulContext,
    PermContext,
    generate,
    hom_injective_on,
    hom_verify,
    is_normal,
    right_coset_reps,
    subgroup_generated,
)
from .roots import gruenberg_search, gruenberg_T, kk_embed, remak_embed, verify_root_closure
from .series import (
    ClassSpec,
    SeriesPair,
    center,
    class_member,
    compatible_series_check,
    derived_series,
    lower_central_series,
)
from .textio import deserialize, serialize

__all__ = [
    "DEFAULT_CAP",
    "Amalgam",
    "AmalgamHom",
    "Certificate",
    "ClassSpec",
    "FiniteGroup",
    "GroupHom",
    "MulContext",
    "PermContext",
    "SeriesPair",
    "catalog_get",
    "center",
    "certify",
    "class_member",
    "compatible_series_check",
    "derived_series",
    "deserialize",
    "direct_product",
    "eval_word",
    "generalized_direct_product",
    "generate",
    "gruenberg_T",
    "gruenberg_search",
    "hom_injective_on",
    "hom_verify",
    "identity_amalgam",
    "is_normal",
    "kk_embed",
    "lower_central_series",
    "normal_closure",
    "normal_core",
    "quotient",
    "remak_embed",
    "right_coset_reps",
    "serialize",
    "subgroup_generated",
    "theorem2_build",
    "verify_root_closure",
    "wreath_context",
    "wreath_group",
]
