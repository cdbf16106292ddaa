"""Surface porosity estimation with one-dimensional local binary patterns."""

from .detector import DefectPattern, DetectorConfig, TrainedModel, detect, detect_with_stats, train
from .errors import FormatError, GeometryError, PorosityError
from .features import FeatureVector, extract_window_features, histogram, log_likelihood_ratio
from .grading import GradeTable, MetricsReport, evaluate, grade, porosity_percent, window_ground_truth
from .imagebuf import GrayImage, WindowGrid, horizontal_segments, new_image, partition_windows, vertical_segments
from .kernels import BACKEND
from .lbp import Lbp1dConfig, Lbp2dConfig, lbp1d_label, lbp2d_label, lbp2d_rotation_min, uniformity_1d, uniformity_2d
from .retinex import RetinexConfig, gaussian_kernel, ssr_normalize

__version__ = "0.1.0"
