#include "synchpack/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace synchpack {

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return make_rational(value.get<std::int64_t>());
  if (value.is_number_unsigned()) return Rational(mpz_class(std::to_string(value.get<std::uint64_t>()), 10));
  if (value.is_number_float()) return parse_rational(value.dump());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw std::invalid_argument("expected a number, got " + value.dump());
}

Json rational_to_json(const Rational& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
  return Json(to_string(value));
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("instance must be a JSON object");
  std::vector<Rational> machines;
  for (const Json& m : doc.at("machines")) machines.push_back(rational_from_json(m));
  std::vector<Job> jobs;
  for (const Json& jd : doc.at("jobs")) {
    Job job;
    job.weight = jd.contains("weight") ? rational_from_json(jd.at("weight")) : Rational(1);
    job.arrival = jd.contains("arrival") ? rational_from_json(jd.at("arrival")) : Rational(0);
    for (const Json& td : jd.at("tasks")) {
      Task task;
      task.size = rational_from_json(td.at("size"));
      for (const auto& [key, p] : td.at("proc").items()) {
        int machine = 0;
        try {
          std::size_t used = 0;
          machine = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw std::invalid_argument("machine key '" + key + "' is not an integer");
        }
        Rational slots = rational_from_json(p);
        if (slots.get_den() != 1) throw std::invalid_argument("processing time " + to_string(slots) + " is not integral");
        if (!slots.get_num().fits_slong_p()) throw std::invalid_argument("processing time too large");
        task.proc[machine] = slots.get_num().get_si();
      }
      job.tasks.push_back(std::move(task));
    }
    jobs.push_back(std::move(job));
  }
  return Instance(std::move(machines), std::move(jobs));
}

Json instance_to_json(const Instance& instance) {
  Json doc;
  doc["machines"] = Json::array();
  for (const Rational& m : instance.machines()) doc["machines"].push_back(rational_to_json(m));
  doc["jobs"] = Json::array();
  for (const Job& job : instance.jobs()) {
    Json jd;
    jd["weight"] = rational_to_json(job.weight);
    if (job.arrival != 0) jd["arrival"] = rational_to_json(job.arrival);
    jd["tasks"] = Json::array();
    for (const Task& t : job.tasks) {
      Json td;
      td["size"] = rational_to_json(t.size);
      td["proc"] = Json::object();
      for (const auto& [machine, p] : t.proc) td["proc"][std::to_string(machine)] = p;
      jd["tasks"].push_back(td);
    }
    doc["jobs"].push_back(jd);
  }
  return doc;
}

Schedule schedule_from_json(const Json& doc) {
  Schedule s;
  s.mode = parse_schedule_mode(doc.at("mode").get<std::string>());
  for (const Json& jd : doc.at("jobs")) {
    std::vector<std::vector<Segment>> tasks;
    for (const Json& td : jd) {
      std::vector<Segment> segs;
      for (const Json& sd : td)
        segs.push_back({sd.at("machine").get<int>(), rational_from_json(sd.at("start")), rational_from_json(sd.at("end"))});
      tasks.push_back(std::move(segs));
    }
    s.segments.push_back(std::move(tasks));
  }
  return s;
}

Json schedule_to_json(const Schedule& schedule) {
  Json doc;
  doc["mode"] = to_string(schedule.mode);
  doc["jobs"] = Json::array();
  for (const auto& job : schedule.segments) {
    Json jd = Json::array();
    for (const auto& segs : job) {
      Json td = Json::array();
      for (const Segment& s : segs)
        td.push_back({{"machine", s.machine}, {"start", rational_to_json(s.start)}, {"end", rational_to_json(s.end)}});
      jd.push_back(td);
    }
    doc["jobs"].push_back(jd);
  }
  return doc;
}

Json report_to_json(const ValidationReport& report) {
  Json doc;
  doc["ok"] = report.ok();
  doc["violations"] = Json::array();
  for (const Violation& v : report.violations)
    doc["violations"].push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
  return doc;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Json::parse(buf.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace synchpack
