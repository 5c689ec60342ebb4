"""Query entity linking by searching human-annotated sentences."""
from .candgen import (AnchorDictionary, Candidate, CandidateSet, entity_search_candidates,
                      extract_pairs, generate_candidates, partition_candidates,
                      prune_long_string, prune_title_match)
from .corpus import (AnnotatedSentence, Annotation, Corpus, CorpusFormatError, Page,
                     augment_title_annotations, load_corpus, parse_annotated_sentence,
                     parse_corpus_lines, propagate_first_mention)
from .evaluate import EvalReport, GoldQuery, average_f1, query_f1, read_dataset
from .features import (FEATURE_NAMES, EmbeddingTable, EntityResources,
                       build_entity_resources, context_match_score, cosine,
                       extract_features, featurize, load_embeddings, sentence_embedding)
from .index import Index, ScoredSentence, build_index, load_index, save_index, score_document, search
from .pipeline import Linker, build_artifacts
from .ranker import (RegressionModel, TrainingExample, label_candidates, predict, select,
                     svr_objective, train_svr)
from .stats import LinkStats, compute_link_stats, lp, prior

__version__ = "0.1.0"
