#pragma once

#include "synchpack/model.hpp"
#include "synchpack/rational.hpp"

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

using synchpack::Rational;

inline Rational q(const std::string& text) { return synchpack::parse_rational(text); }

inline synchpack::Task task(const std::string& size, std::map<int, std::int64_t> proc) {
  synchpack::Task t;
  t.size = q(size);
  t.proc = std::move(proc);
  return t;
}

inline synchpack::Job job(std::vector<synchpack::Task> tasks, const std::string& weight = "1",
                          const std::string& arrival = "0") {
  synchpack::Job j;
  j.weight = q(weight);
  j.arrival = q(arrival);
  j.tasks = std::move(tasks);
  return j;
}

inline std::vector<Rational> caps(std::initializer_list<const char*> values) {
  std::vector<Rational> out;
  for (const char* v : values) out.push_back(q(v));
  return out;
}

// One machine of capacity 1; job 0 has a task a=1,p=2 and job 1 a task a=1,p=1.
inline synchpack::Instance instance_a() {
  return synchpack::Instance(caps({"1"}), {job({task("1", {{0, 2}})}), job({task("1", {{0, 1}})})});
}

inline synchpack::Segment seg(int machine, const std::string& start, const std::string& end) {
  return {machine, q(start), q(end)};
}

}  // namespace testutil
