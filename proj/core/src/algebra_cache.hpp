#pragma once

#include <memory>
#include <mutex>

#include "ea/poset.hpp"

namespace ea {

struct AlgebraCache {
  std::once_flag poset_once;
  std::unique_ptr<PosetIndex> poset;
};

}  // namespace ea
