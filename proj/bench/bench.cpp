// Times each parallel kernel against its serial reference and checks that
// both produce the same result.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "soergel/homsolve.hpp"
#include "soergel/relations.hpp"

using namespace soergel;

namespace {

double seconds(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class T>
void row(const char* name, const std::function<T(Exec)>& kernel) {
  T serial, parallel;
  kernel(Exec::Serial);  // fills the per-thread generator caches
  double ts = seconds([&] { serial = kernel(Exec::Serial); });
  double tp = seconds([&] { parallel = kernel(Exec::Parallel); });
  std::printf("%-28s %10.3f %10.3f %8.2fx  %s\n", name, ts, tp, ts / tp, serial == parallel ? "same" : "DIFFERENT");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

  row<std::string>("relation suite n=5", [](Exec e) {
    SuiteReport r = verify_suite(5, false, e);
    std::string s;
    for (const auto& l : r.lines) s += l.str() + "\n";
    return s;
  });

  row<std::string>("hom comparison n=2", [](Exec e) {
    auto seqs = sequences_up_to(2, 2);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (const auto& a : seqs)
      for (const auto& b : seqs) pairs.emplace_back(a, b);
    std::string s;
    for (const auto& l : compare_all(pairs, -3, 6, 2, e)) s += l.str() + "\n";
    return s;
  });

  row<std::string>("evaluate, 5 strands", [](Exec e) {
    Ring ring{5, false};
    Diagram d = Diagram::parse(
        "id:1 id:2 id:1 id:3 id:5 ; six:1,2 four:3,5 ; id:2 id:1 id:2 id:5 split:3 ; six:2,1 id:5 merge:3 ; "
        "id:1 id:2 id:1 four:5,3");
    return evaluate(d, ring, e).dump();
  });
}
