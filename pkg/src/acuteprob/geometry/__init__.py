from .metrics import (HeightProfile, area, hausdorff_distance_to_unit_disk, height_profile,
                      longest_segment_frame, perimeter)
from .regions import (Ball3, Disk, Ellipse, PerturbedBall3, PlanarRegion, Polygon, RadialRegion,
                      Region, Similarity, SimilarRegion, real_sph_harm)
from .triangles import Kind, TriangleClass, acute_mask, classify_triangle, largest_angles

__all__ = [
    "Ball3", "Disk", "Ellipse", "HeightProfile", "Kind", "PerturbedBall3", "PlanarRegion",
    "Polygon", "RadialRegion", "Region", "Similarity", "SimilarRegion", "TriangleClass",
    "acute_mask", "area", "classify_triangle", "hausdorff_distance_to_unit_disk",
    "height_profile", "largest_angles", "longest_segment_frame", "perimeter", "real_sph_harm",
]
