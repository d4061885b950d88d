#pragma once

// Canonical forms of tensors with free indices under signed permutation
// symmetries.

#include "tcanon/base_order.hpp"
#include "tcanon/canonicalizer.hpp"
#include "tcanon/errors.hpp"
#include "tcanon/signed_permutation.hpp"
#include "tcanon/stabilizer_chain.hpp"
#include "tcanon/tensor.hpp"
