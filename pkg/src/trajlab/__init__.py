"""trajlab: event labeling, categorization, filtering, and analytics for
robot manipulation episode logs."""

from .analytics import (BUILTIN_PLANS, ChainEpisode, ChainPlan, ChainSlot,
                        RatioReport, StatsRow, StatsTable,
                        independence_upper_bound, mode_table,
                        progressive_completion, ratio_report,
                        round_half_away)
from .errors import (BadMagic, BothZero, EmptyAllowList, EmptyInput,
                     HeaderParseError, InfeasibleScript, InvariantViolation,
                     MissingArticulation, MissingRate, ModeCoverageError,
                     ParseError, RequiredFieldNaN, TooShort, TrajlabError,
                     TruncatedFile, UnknownMode, UnsupportedVersion)
from .events import Event, EventKind, EventList, extract_events
from .io_binary import (read_binary, read_binary_file, record_size,
                        write_binary, write_binary_file)
from .io_text import read_text, read_text_file, write_text, write_text_file
from .model import (ArticulationKind, Finding, Split, SubtaskKind, Task,
                    TimestepRecord, Trajectory, TrajectoryHeader, check_valid,
                    f32, validate)
from .modes import (BUILTIN_SCHEMES, MODE_IDS, MODE_RULES, PICK_COARSE,
                    SUCCESS_AT_END_MODES, SUCCESS_MODE_IDS, GroupingScheme,
                    ModeLabel, classify, group, last_index)
from .pipeline import (AllowRule, BatchResult, DatasetManifest, FilterSpec,
                       LabelRecord, ManifestEntry, filter_labels, label_batch,
                       label_file, label_trajectory, read_labels_jsonl,
                       read_trajectory_file, write_labels_jsonl)
from .predicates import (failure_step, is_closed, is_open, is_static, j_max,
                         slightly_closed, slightly_opened, success_step)
from .synth import (EventScript, FuzzConfig, NoiseModel, ScriptStep,
                    defining_scripts, fuzz, random_script, realize,
                    sample_noise)
from .thresholds import DEFAULT_THRESHOLDS, Thresholds

__version__ = "0.1.0"
