"""Instance generators for the hardness reductions, with witnesses."""
from .common import BadParams, GadgetInstance, GadgetParams, InvalidFormula, InvalidInput, InvalidParams
from .epsilon_path import gen_epsilon_path, layout_compressed, layout_stretched
from .monotone_sat import VARIANTS, MonotoneCnf, blue_placeable, clause_gadget, gen_monotone3sat
from .three_partition import ThreePartitionInstance, gen_3partition, gen_3partition_three_lengths

__all__ = [
    "BadParams",
    "GadgetInstance",
    "GadgetParams",
    "InvalidFormula",
    "InvalidInput",
    "InvalidParams",
    "MonotoneCnf",
    "ThreePartitionInstance",
    "VARIANTS",
    "blue_placeable",
    "clause_gadget",
    "gen_3partition",
    "gen_3partition_three_lengths",
    "gen_epsilon_path",
    "gen_monotone3sat",
    "layout_compressed",
    "layout_stretched",
]
