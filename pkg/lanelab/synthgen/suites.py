"""The fixed battery of evaluation scenes."""

from lanelab.synthgen.scene import (
    DistractorLine,
    EraseLane,
    GaussianBlur,
    LaneSpec,
    OcclusionBand,
    SceneSpec,
)

SUITES_VERSION = "1"
SUITE_FRAMES = 500

# scene geometry shared by every suite at 1056x594: lanes meet at (528, 290)
LEFT_BOTTOM_X = 225.0
RIGHT_BOTTOM_X = 831.0

# low-contrast yellow on gray: luma 100 against 80
COLORED_ROAD = (80, 80, 80)
COLORED_LANE = (124, 101, 28)

# erase spans (start, length, side), each no longer than the default hold period
_ERASE_SPANS = (
    (40, 20, "left"),
    (110, 24, "right"),
    (200, 22, "left"),
    (290, 24, "left"),
    (380, 21, "right"),
    (450, 23, "right"),
)
WIPER_EVERY = 50
WIPER_FRAMES = 5


def _lanes(**overrides: object) -> dict[str, LaneSpec]:
    return {
        "left": LaneSpec(angle_deg=45.0, bottom_x=LEFT_BOTTOM_X, **overrides),  # type: ignore[arg-type]
        "right": LaneSpec(angle_deg=135.0, bottom_x=RIGHT_BOTTOM_X, **overrides),  # type: ignore[arg-type]
    }


def _wiper(start: int) -> OcclusionBand:
    # a 40 px dark blade at 80 degrees cutting the left lane near (368, 450)
    return OcclusionBand(
        start_frame=start,
        end_frame=start + WIPER_FRAMES,
        polygon=[(364.0, 360.0), (404.0, 360.0), (362.6, 594.0), (322.6, 594.0)],
        intensity=25,
    )


def _occluded_perturbations() -> list:
    erasures = [EraseLane(start_frame=s, end_frame=s + n, side=side) for s, n, side in _ERASE_SPANS]  # type: ignore[arg-type]
    wipers = [_wiper(s) for s in range(5, SUITE_FRAMES, WIPER_EVERY)]
    return [*erasures, *wipers]


def _distractors() -> list:
    return [
        # crossing marking and far guard rail: outside both angle bands
        DistractorLine(angle_deg=0.0, x=528.0, y=480.0, length=300.0, width=5),
        DistractorLine(angle_deg=80.0, x=470.0, y=450.0, length=120.0, width=4),
        DistractorLine(angle_deg=100.0, x=590.0, y=450.0, length=120.0, width=4),
        # short in-band scuffs, far shorter than the lanes
        DistractorLine(angle_deg=40.0, x=420.0, y=500.0, length=40.0, width=3, color=(150, 150, 150)),
        DistractorLine(angle_deg=140.0, x=640.0, y=500.0, length=40.0, width=3, color=(150, 150, 150)),
    ]


def standard_suites() -> dict[str, SceneSpec]:
    """The eight named scenes of the evaluation battery, 500 frames each."""
    white = _lanes()
    return {
        "clean": SceneSpec(**white, seed=1),
        "noisy": SceneSpec(**white, noise_sigma=10.0, seed=2),
        "blurred": SceneSpec(**white, perturbations=[GaussianBlur(sigma=2.0)], seed=3),
        "occluded": SceneSpec(**white, perturbations=_occluded_perturbations(), seed=4),
        "distractor-heavy": SceneSpec(**white, perturbations=_distractors(), seed=5),
        "dashed-lane": SceneSpec(
            **_lanes(style="dashed", dash_len=30.0, gap_len=15.0),
            dash_speed=6.0,
            seed=6,
        ),
        "colored-lane": SceneSpec(
            **_lanes(width=10.0, color=COLORED_LANE),
            road_color=COLORED_ROAD,
            seed=7,
        ),
        "lane-change": SceneSpec(**white, lateral_drift_per_frame=3.0, drift_period=30, seed=8),
    }
