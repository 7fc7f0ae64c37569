"""Line-of-sight blockage of ceiling optical access points by a disc obstacle."""

from .geometry import (
    COPLANAR,
    HorizontalDisc,
    Point3,
    Segment,
    plane_crossing_parameter,
    segment_blocked_by_disc,
    segments_blocked_by_discs,
    xy_distance,
)
from .room import (
    AccessPoint,
    DiscObstacle,
    ReceiverGrid,
    Room,
    default_aps,
    default_room,
    disc_for_receiver,
    grid_locations,
)
from .engine import (
    BlockageCurve,
    BlockageSample,
    SweepSpec,
    blocked_mask,
    default_sweeps,
    is_blocked,
    multi_link_blocked,
    percentage_blockage,
    sweep,
)
from .oracle import OracleConfig, mc_blockage_fraction, sampled_blocked

__version__ = "0.1.0"
