#ifndef FRCOMPLEX_FRCOMPLEX_HPP
#define FRCOMPLEX_FRCOMPLEX_HPP

#include "frcomplex/baseline.hpp"
#include "frcomplex/biber.hpp"
#include "frcomplex/corpus.hpp"
#include "frcomplex/cross_validation.hpp"
#include "frcomplex/dataset.hpp"
#include "frcomplex/decision_tree.hpp"
#include "frcomplex/diversity.hpp"
#include "frcomplex/evaluation.hpp"
#include "frcomplex/explain.hpp"
#include "frcomplex/features.hpp"
#include "frcomplex/lexicon.hpp"
#include "frcomplex/logistic_regression.hpp"
#include "frcomplex/metrics.hpp"
#include "frcomplex/model.hpp"
#include "frcomplex/naive_bayes.hpp"
#include "frcomplex/normalizer.hpp"
#include "frcomplex/random_forest.hpp"
#include "frcomplex/rules.hpp"
#include "frcomplex/segmentation.hpp"
#include "frcomplex/text.hpp"

#endif  // FRCOMPLEX_FRCOMPLEX_HPP
