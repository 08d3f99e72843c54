#pragma once

#include <cstddef>
#include <cstdint>

#include "rankhash/dataset.hpp"

inline rankhash::SyntheticSpec uniform_spec(std::size_t subjects, std::size_t samples, std::size_t n, double sigma,
                                            double low, double high, std::uint64_t seed) {
  rankhash::SyntheticSpec spec;
  spec.subjects = subjects;
  spec.samples_per_subject = samples;
  spec.n = n;
  spec.sigma = sigma;
  spec.low = low;
  spec.high = high;
  spec.seed = seed;
  return spec;
}
