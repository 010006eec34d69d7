"""facepref: personalized like/dislike models over facial embeddings.

The package turns per-face embedding vectors into profile-level features,
trains preference classifiers on a user's review history, reproduces the
full evaluation methodology (accuracy decomposition, ROC/AUC, learning
curves, repeated-split distribution studies), and serves a live
human-review loop over HTTP.
"""

from .data import (
    Dataset,
    Display,
    Profile,
    filter_reviewable,
    load_dataset,
    parse_dataset,
    save_dataset,
    serialize_dataset,
    training_profiles,
)
from .features import (
    DEFAULT_MAX_IMAGES,
    FeatureMatrix,
    FeatureVector,
    build_avg,
    build_concat,
    build_feature,
    build_matrix,
)
from .models import (
    ClassWeighting,
    Model,
    classify,
    load_model,
    predict_score,
    predict_scores,
    save_model,
    train_logistic,
    train_mlp,
    train_svm_rbf,
)
from .synthetic import FaceCountLaw, SyntheticSpec, bayes_accuracy, calibrate_separation, generate

__version__ = "0.1.0"
