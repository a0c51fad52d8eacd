#include "graphon_lab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace graphon_lab {

namespace {
thread_local bool t_in_region = false;
std::atomic<std::size_t> g_cap{0};
}  // namespace

void set_thread_cap(std::size_t cap) { g_cap = cap; }

std::size_t thread_count() {
  if (const std::size_t cap = g_cap.load()) return cap;
  if (const char* env = std::getenv("GRAPHON_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

bool in_parallel_region() { return t_in_region; }

detail::RegionGuard::RegionGuard() : previous(t_in_region) { t_in_region = true; }
detail::RegionGuard::~RegionGuard() { t_in_region = previous; }

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace graphon_lab
