"""Built-in deterministic reference trackers and the task-file format."""

from .registry import TrackerInfo, TRACKERS, get_tracker, infer_tracker, list_trackers, run_tracker
from .tasks import TaskSpec, parse_task_file, parse_task_path
from .visualizer import PALETTE, Visualizer, styles

__all__ = [
    "TrackerInfo", "TRACKERS", "get_tracker", "infer_tracker", "list_trackers",
    "run_tracker", "TaskSpec", "parse_task_file", "parse_task_path",
    "PALETTE", "Visualizer", "styles",
]
