"""Cusped spaces of finitely generated groups and coarse-geometric measurements on them."""
from .cusped import CuspedSpace, EmbeddingFit, build_cusped_space, embedding_fit
from .example_spaces import ExampleSpace, build_example_Xh, build_example_Y
from .graph import Graph, PathRecord, shortest_distance
from .groups import CosetId, SubgroupSpec, cayley_ball, coset_decompose, make_group
from .horoball import HoroballSpec, build_horoball, vertical_ray
from .visual import VisualSet, visual_set, visual_size, visual_size_profile

__version__ = "0.1.0"
