#pragma once

#include "subword/augment.hpp"
#include "subword/bpe.hpp"
#include "subword/corpus.hpp"
#include "subword/error.hpp"
#include "subword/metrics.hpp"
#include "subword/model.hpp"
#include "subword/rng.hpp"
#include "subword/stats.hpp"
#include "subword/token_seq.hpp"
#include "subword/ulm.hpp"
#include "subword/utf8.hpp"
