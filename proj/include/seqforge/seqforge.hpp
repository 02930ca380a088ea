#ifndef SEQFORGE_SEQFORGE_HPP_
#define SEQFORGE_SEQFORGE_HPP_

#include "seqforge/core.hpp"
#include "seqforge/dense.hpp"
#include "seqforge/errors.hpp"
#include "seqforge/fft.hpp"
#include "seqforge/harness.hpp"
#include "seqforge/majorizer.hpp"
#include "seqforge/metrics.hpp"
#include "seqforge/solvers.hpp"

#endif  // SEQFORGE_SEQFORGE_HPP_
