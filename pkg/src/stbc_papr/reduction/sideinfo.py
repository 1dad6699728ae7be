from dataclasses import dataclass
from typing import Optional

from ..errors import SideInfoError

METHODS = ("none", "clip", "slm", "pts")


@dataclass(frozen=True)
class SideInfo:
    """What the receiver needs to undo a PAPR-reduction rotation."""

    method: str
    slm_index: Optional[int] = None
    phases: Optional[tuple] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise SideInfoError(f"unknown method tag {self.method!r}")
        if self.method == "slm" and self.slm_index is None:
            raise SideInfoError("SLM side information needs a route index")
        if self.method == "pts" and self.phases is None:
            raise SideInfoError("PTS side information needs a phase vector")

    def to_dict(self):
        out = {"method": self.method}
        if self.slm_index is not None:
            out["slm_index"] = self.slm_index
        if self.phases is not None:
            out["phases"] = [[complex(b).real, complex(b).imag] for b in self.phases]
        return out


NO_SIDE_INFO = SideInfo("none")
CLIP_SIDE_INFO = SideInfo("clip")
