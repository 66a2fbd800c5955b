from latticexray.search.collisions import (
    CollisionClass,
    CollisionReport,
    DiscoveryRecord,
    find_collisions,
    rediscover_negative_answer,
    signature_key,
    verify_theorem12,
)
from latticexray.search.enumeration import EnumerationSpec, enumerate_symmetric_polygons

__all__ = [
    "CollisionClass",
    "CollisionReport",
    "DiscoveryRecord",
    "EnumerationSpec",
    "enumerate_symmetric_polygons",
    "find_collisions",
    "rediscover_negative_answer",
    "signature_key",
    "verify_theorem12",
]
