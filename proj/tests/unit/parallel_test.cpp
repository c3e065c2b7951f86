#include "sllm/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

namespace sllm {
namespace {

TEST(Parallel, EverySlotFilledOnce) {
  for (int threads : {1, 2, 4}) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += static_cast<int>(i); });
    for (std::size_t i = 0; i < hits.size(); ++i) EXPECT_EQ(hits[i], static_cast<int>(i));
  }
}

TEST(Parallel, FirstExceptionIsRethrownAfterJoin) {
  std::atomic<int> done{0};
  EXPECT_THROW(parallel_for(50, 3,
                            [&](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                              ++done;
                            }),
               std::runtime_error);
  EXPECT_EQ(done.load(), 49);
}

}  // namespace
}  // namespace sllm
