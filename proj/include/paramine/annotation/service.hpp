// Copyright 2026 The paramine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARAMINE_ANNOTATION_SERVICE_HPP_
#define PARAMINE_ANNOTATION_SERVICE_HPP_

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "paramine/annotation/kappa.hpp"
#include "paramine/annotation/store.hpp"
#include "paramine/stats.hpp"
#include "paramine/util/io.hpp"
#include "paramine/util/log.hpp"

namespace paramine::annotation {

inline constexpr std::array<const char *, 4> kCriteria = {"consistency", "lexical", "phrasal",
                                                          "sentential"};

enum class ServiceErrc {
  kBadRequest,
  kUnknownWorker,
  kForbidden,
  kNotFound,
  kDuplicate,
  kOutOfRange,
  kConflict,
};

class ServiceError : public Error {
 public:
  ServiceError(ServiceErrc code, const std::string &msg) : Error(msg), code_(code) {}
  ServiceErrc code() const { return code_; }

 private:
  ServiceErrc code_;
};

struct ServiceConfig {
  int replication = 3;
  size_t min_overlap = 20;
  double flag_below = 0.4;
  size_t min_valid_judgments = 3;
  // Required in the X-Admin-Token header of admin requests when non-empty.
  std::string admin_token;

  void Validate() const {
    if (replication < 1) throw ConfigError("annotation.replication must be >= 1");
    if (min_valid_judgments < 1) throw ConfigError("annotation.min_valid_judgments must be >= 1");
    if (flag_below < -1.0 || flag_below > 1.0) {
      throw ConfigError("annotation.flag_below must lie in [-1, 1]");
    }
  }
};

enum class TaskStatus { kOpen, kAssigned, kDone, kRepublished };

inline const char *TaskStatusName(TaskStatus s) {
  switch (s) {
    case TaskStatus::kOpen: return "OPEN";
    case TaskStatus::kAssigned: return "ASSIGNED";
    case TaskStatus::kDone: return "DONE";
    case TaskStatus::kRepublished: return "REPUBLISHED";
  }
  return "OPEN";
}

inline TaskStatus TaskStatusFromName(std::string_view s) {
  if (s == "OPEN") return TaskStatus::kOpen;
  if (s == "ASSIGNED") return TaskStatus::kAssigned;
  if (s == "DONE") return TaskStatus::kDone;
  if (s == "REPUBLISHED") return TaskStatus::kRepublished;
  throw StoreError("unknown task status " + std::string(s));
}

struct Task {
  int64_t task_id = 0;
  std::string pair_id;
  TaskStatus status = TaskStatus::kOpen;
  std::optional<std::string> assigned_worker;
  std::optional<std::string> restricted_to;
};

struct TaskAssignment {
  Task task;
  std::string sentence_a;
  std::string sentence_b;
};

struct Judgment {
  int64_t judgment_id = 0;
  int64_t task_id = 0;
  std::string pair_id;
  std::string worker_id;
  std::array<int, 4> scores{};
  PhenomenonCounts phenomena{};
  int64_t timestamp = 0;
  bool valid = true;
};

struct JudgmentInput {
  int64_t task_id = 0;
  std::string worker_id;
  std::array<int, 4> scores{};
  std::map<std::string, int> phenomena;
};

struct WorkerReliability {
  std::string worker_id;
  size_t overlap = 0;
  std::array<std::optional<double>, 4> kappa;
  bool trusted = false;
  bool flagged = false;
};

struct PairAggregate {
  std::string pair_id;
  size_t valid_judgments = 0;
  bool pending = true;
  std::array<double, 4> means{};
  std::array<double, 6> phenomena_means{};
};

struct RepublishReport {
  std::vector<std::string> flagged_workers;
  size_t voided = 0;
  size_t republished = 0;
  std::map<std::string, size_t> assigned_to;
  size_t unrestricted = 0;
};

// A worker is flagged once its consistency kappa is trusted (enough overlap)
// and strictly below the threshold.
inline bool ShouldFlag(const std::optional<double> &kappa, size_t overlap,
                       const ServiceConfig &cfg) {
  return kappa.has_value() && overlap >= cfg.min_overlap && *kappa < cfg.flag_below;
}

inline int64_t SystemSeconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

inline std::optional<size_t> PhenomenonIndex(std::string_view name) {
  for (size_t k = 0; k < kPhenomena.size(); ++k) {
    if (name == kPhenomena[k]) return k;
  }
  return std::nullopt;
}

inline Json PhenomenaToJson(const PhenomenonCounts &c) {
  Json j = Json::object();
  for (size_t k = 0; k < 6; ++k) j[kPhenomena[k]] = c[k];
  return j;
}

// All state lives in the SQLite store; every public call runs under one
// mutex and, when it writes, one transaction.
class AnnotationService {
 public:
  explicit AnnotationService(const std::string &db_path, ServiceConfig cfg = {},
                             std::function<int64_t()> clock = SystemSeconds)
      : cfg_(std::move(cfg)), clock_(std::move(clock)), db_(db_path) {
    cfg_.Validate();
    if (db_path != ":memory:") db_.Exec("PRAGMA journal_mode = WAL");
    db_.Exec(kSchema);
  }

  const ServiceConfig &config() const { return cfg_; }

  void AddWorker(const std::string &worker_id, const std::string &role = "worker") {
    std::lock_guard lock(mu_);
    if (worker_id.empty()) throw ServiceError(ServiceErrc::kBadRequest, "empty worker id");
    db_.Prepare("INSERT OR IGNORE INTO workers (worker_id, role) VALUES (?, ?)")
        .Bind(1, worker_id)
        .Bind(2, role)
        .Run();
  }

  // Creates `replication` open tasks for a new pair; false if it already exists.
  bool AddPair(const std::string &pair_id, const std::string &a, const std::string &b) {
    std::lock_guard lock(mu_);
    Transaction txn(db_);
    auto ins = db_.Prepare("INSERT OR IGNORE INTO pairs (pair_id, sentence_a, sentence_b) "
                           "VALUES (?, ?, ?)");
    ins.Bind(1, pair_id).Bind(2, a).Bind(3, b).Run();
    if (db_.Changes() == 0) return false;
    for (int r = 0; r < cfg_.replication; ++r) {
      db_.Prepare("INSERT INTO tasks (pair_id, status) VALUES (?, 'OPEN')").Bind(1, pair_id).Run();
    }
    txn.Commit();
    return true;
  }

  std::optional<TaskAssignment> ClaimNext(const std::string &worker_id) {
    std::lock_guard lock(mu_);
    Transaction txn(db_);
    RequireWorker(worker_id);
    if (IsFlagged(worker_id)) {
      throw ServiceError(ServiceErrc::kForbidden, "worker " + worker_id + " is flagged");
    }
    {
      auto held = db_.Prepare(
          "SELECT task_id FROM tasks WHERE status = 'ASSIGNED' AND assigned_worker = ? "
          "ORDER BY task_id LIMIT 1");
      held.Bind(1, worker_id);
      if (held.Step()) {
        int64_t id = held.Int(0);
        txn.Commit();
        return LoadAssignment(id);
      }
    }
    auto next = db_.Prepare(R"sql(
      SELECT t.task_id FROM tasks t
      WHERE (t.status = 'OPEN'
             OR (t.status = 'REPUBLISHED' AND (t.restricted_to = ?1 OR t.restricted_to IS NULL)))
        AND NOT EXISTS (SELECT 1 FROM judgments j
                        WHERE j.pair_id = t.pair_id AND j.worker_id = ?1)
      ORDER BY CASE t.status WHEN 'REPUBLISHED' THEN 0 ELSE 1 END, t.task_id
      LIMIT 1)sql");
    next.Bind(1, worker_id);
    if (!next.Step()) return std::nullopt;
    int64_t id = next.Int(0);
    db_.Prepare("UPDATE tasks SET status = 'ASSIGNED', assigned_worker = ? WHERE task_id = ?")
        .Bind(1, worker_id)
        .Bind(2, id)
        .Run();
    txn.Commit();
    return LoadAssignment(id);
  }

  Judgment Submit(const JudgmentInput &in) {
    std::lock_guard lock(mu_);
    Transaction txn(db_);
    RequireWorker(in.worker_id);
    for (size_t c = 0; c < 4; ++c) {
      if (in.scores[c] < 1 || in.scores[c] > 5) {
        throw ServiceError(ServiceErrc::kOutOfRange,
                           std::string(kCriteria[c]) + " must be an integer in 1..5");
      }
    }
    Judgment j;
    for (const auto &[name, count] : in.phenomena) {
      auto k = PhenomenonIndex(name);
      if (!k) throw ServiceError(ServiceErrc::kOutOfRange, "unknown phenomenon " + name);
      if (count < 0) {
        throw ServiceError(ServiceErrc::kOutOfRange, "phenomenon counts must be non-negative");
      }
      j.phenomena[*k] = count;
    }
    auto task = LoadTask(in.task_id);
    if (!task) {
      throw ServiceError(ServiceErrc::kNotFound, "unknown task " + std::to_string(in.task_id));
    }
    {
      auto dup = db_.Prepare("SELECT 1 FROM judgments WHERE pair_id = ? AND worker_id = ?");
      dup.Bind(1, task->pair_id).Bind(2, in.worker_id);
      if (dup.Step()) {
        throw ServiceError(ServiceErrc::kDuplicate,
                           "worker " + in.worker_id + " already judged pair " + task->pair_id);
      }
    }
    if (task->status != TaskStatus::kAssigned || task->assigned_worker != in.worker_id) {
      throw ServiceError(ServiceErrc::kForbidden, "task " + std::to_string(in.task_id) +
                                                      " is not assigned to " + in.worker_id);
    }
    j.task_id = in.task_id;
    j.pair_id = task->pair_id;
    j.worker_id = in.worker_id;
    j.scores = in.scores;
    j.timestamp = clock_();
    db_.Prepare(R"sql(
      INSERT INTO judgments (task_id, pair_id, worker_id, consistency, lexical, phrasal,
                             sentential, phenomena, created_at)
      VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?))sql")
        .Bind(1, j.task_id)
        .Bind(2, j.pair_id)
        .Bind(3, j.worker_id)
        .Bind(4, j.scores[0])
        .Bind(5, j.scores[1])
        .Bind(6, j.scores[2])
        .Bind(7, j.scores[3])
        .Bind(8, PhenomenaToJson(j.phenomena).dump())
        .Bind(9, j.timestamp)
        .Run();
    j.judgment_id = db_.LastInsertId();
    db_.Prepare("UPDATE tasks SET status = 'DONE' WHERE task_id = ?").Bind(1, j.task_id).Run();
    txn.Commit();
    return j;
  }

  PairAggregate Aggregate(const std::string &pair_id) {
    std::lock_guard lock(mu_);
    {
      auto exists = db_.Prepare("SELECT 1 FROM pairs WHERE pair_id = ?");
      exists.Bind(1, pair_id);
      if (!exists.Step()) throw ServiceError(ServiceErrc::kNotFound, "unknown pair " + pair_id);
    }
    PairAggregate out;
    out.pair_id = pair_id;
    std::vector<Judgment> valid;
    for (Judgment &j : LoadJudgments(pair_id)) {
      if (j.valid) valid.push_back(std::move(j));
    }
    out.valid_judgments = valid.size();
    if (valid.size() < cfg_.min_valid_judgments) return out;
    out.pending = false;
    for (const Judgment &j : valid) {
      for (size_t c = 0; c < 4; ++c) out.means[c] += j.scores[c];
      for (size_t k = 0; k < 6; ++k) out.phenomena_means[k] += j.phenomena[k];
    }
    const double n = static_cast<double>(valid.size());
    for (double &m : out.means) m /= n;
    for (double &m : out.phenomena_means) m /= n;
    return out;
  }

  std::vector<WorkerReliability> Reliability() {
    std::lock_guard lock(mu_);
    return LoadReliability();
  }

  // Kappa of every worker against the majority vote of the others, per
  // criterion, over valid judgments. Flagged workers keep their record.
  std::vector<WorkerReliability> RecomputeKappa() {
    std::lock_guard lock(mu_);
    Transaction txn(db_);
    std::map<std::string, WorkerReliability> previous;
    for (WorkerReliability &r : LoadReliability()) previous[r.worker_id] = std::move(r);

    std::map<std::string, std::vector<Judgment>> by_pair;
    for (Judgment &j : LoadJudgments(std::nullopt)) {
      if (j.valid) by_pair[j.pair_id].push_back(std::move(j));
    }
    std::vector<std::string> workers;
    {
      auto st = db_.Prepare("SELECT worker_id FROM workers WHERE role = 'worker' ORDER BY worker_id");
      while (st.Step()) workers.push_back(st.Text(0));
    }
    const int64_t now = clock_();
    for (const std::string &w : workers) {
      auto prev = previous.find(w);
      if (prev != previous.end() && prev->second.flagged) continue;
      WorkerReliability r;
      r.worker_id = w;
      std::array<std::vector<int>, 4> mine, majority;
      for (const auto &[pair_id, js] : by_pair) {
        auto self = std::find_if(js.begin(), js.end(),
                                 [&](const Judgment &j) { return j.worker_id == w; });
        if (self == js.end()) continue;
        std::array<std::vector<int>, 4> others;
        for (const Judgment &j : js) {
          if (j.worker_id == w) continue;
          for (size_t c = 0; c < 4; ++c) others[c].push_back(j.scores[c]);
        }
        if (others[0].size() < 2) continue;
        for (size_t c = 0; c < 4; ++c) {
          mine[c].push_back(self->scores[c]);
          majority[c].push_back(*MajorityVote(others[c]));
        }
      }
      r.overlap = mine[0].size();
      for (size_t c = 0; c < 4; ++c) {
        if (mine[c].empty()) continue;
        try {
          r.kappa[c] = CohensKappa(mine[c], majority[c]);
        } catch (const DataError &e) {
          PARAMINE_LOG(Warning) << "kappa for " << w << " (" << kCriteria[c] << "): " << e.what();
        }
      }
      r.trusted = r.overlap >= cfg_.min_overlap && r.kappa[0].has_value();
      r.flagged = ShouldFlag(r.kappa[0], r.overlap, cfg_);
      db_.Prepare(R"sql(
        INSERT OR REPLACE INTO reliability (worker_id, overlap, kappa_consistency, kappa_lexical,
                                           kappa_phrasal, kappa_sentential, trusted, flagged,
                                           computed_at)
        VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?))sql")
          .Bind(1, w)
          .Bind(2, static_cast<int64_t>(r.overlap))
          .Bind(3, r.kappa[0])
          .Bind(4, r.kappa[1])
          .Bind(5, r.kappa[2])
          .Bind(6, r.kappa[3])
          .Bind(7, r.trusted ? 1 : 0)
          .Bind(8, r.flagged ? 1 : 0)
          .Bind(9, now)
          .Run();
    }
    txn.Commit();
    return LoadReliability();
  }

  // Voids every valid judgment of a flagged worker and reopens its tasks as
  // REPUBLISHED for the highest-kappa trusted, unflagged worker that has not
  // judged the pair yet.
  RepublishReport Republish() {
    std::lock_guard lock(mu_);
    Transaction txn(db_);
    RepublishReport report;
    std::vector<WorkerReliability> rel = LoadReliability();
    std::vector<const WorkerReliability *> ranked;
    for (const WorkerReliability &r : rel) {
      if (r.flagged) report.flagged_workers.push_back(r.worker_id);
      else if (r.trusted) ranked.push_back(&r);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto *x, const auto *y) {
      return *x->kappa[0] > *y->kappa[0];
    });

    struct Affected {
      int64_t task_id;
      std::string pair_id;
      std::optional<int64_t> judgment_id;
    };
    std::vector<Affected> affected;
    for (const std::string &w : report.flagged_workers) {
      auto st = db_.Prepare(R"sql(
        SELECT t.task_id, t.pair_id, j.judgment_id FROM tasks t
        LEFT JOIN judgments j ON j.task_id = t.task_id AND j.worker_id = ?1
        WHERE (j.status = 'VALID')
           OR (t.status = 'ASSIGNED' AND t.assigned_worker = ?1 AND j.judgment_id IS NULL)
        ORDER BY t.task_id)sql");
      st.Bind(1, w);
      while (st.Step()) {
        affected.push_back({st.Int(0), st.Text(1),
                            st.IsNull(2) ? std::nullopt : std::optional<int64_t>(st.Int(2))});
      }
    }
    if (affected.empty()) return report;
    if (ranked.empty()) throw ServiceError(ServiceErrc::kConflict, "no reliable worker");

    for (const Affected &a : affected) {
      if (a.judgment_id) {
        db_.Prepare("UPDATE judgments SET status = 'VOID' WHERE judgment_id = ?")
            .Bind(1, *a.judgment_id)
            .Run();
        ++report.voided;
      }
      std::optional<std::string> target;
      for (const WorkerReliability *r : ranked) {
        if (!HasTouchedPair(r->worker_id, a.pair_id)) {
          target = r->worker_id;
          break;
        }
      }
      if (target) {
        ++report.assigned_to[*target];
      } else {
        ++report.unrestricted;
        PARAMINE_LOG(Warning) << "no eligible reliable worker left for pair " << a.pair_id
                              << "; task " << a.task_id << " reopened to all unflagged workers";
      }
      db_.Prepare("UPDATE tasks SET status = 'REPUBLISHED', assigned_worker = NULL, "
                  "restricted_to = ? WHERE task_id = ?")
          .Bind(1, target)
          .Bind(2, a.task_id)
          .Run();
      ++report.republished;
    }
    txn.Commit();
    return report;
  }

  std::vector<Task> Tasks() {
    std::lock_guard lock(mu_);
    std::vector<Task> out;
    auto st = db_.Prepare("SELECT task_id, pair_id, status, assigned_worker, restricted_to "
                          "FROM tasks ORDER BY task_id");
    while (st.Step()) out.push_back(ReadTask(st));
    return out;
  }

  std::vector<Judgment> Judgments(const std::optional<std::string> &pair_id = std::nullopt) {
    std::lock_guard lock(mu_);
    return LoadJudgments(pair_id);
  }

 private:
  void RequireWorker(const std::string &worker_id) {
    auto st = db_.Prepare("SELECT 1 FROM workers WHERE worker_id = ?");
    st.Bind(1, worker_id);
    if (!st.Step()) throw ServiceError(ServiceErrc::kUnknownWorker, "unknown worker " + worker_id);
  }

  bool IsFlagged(const std::string &worker_id) {
    auto st = db_.Prepare("SELECT flagged FROM reliability WHERE worker_id = ?");
    st.Bind(1, worker_id);
    return st.Step() && st.Int(0) != 0;
  }

  bool HasTouchedPair(const std::string &worker_id, const std::string &pair_id) {
    auto st = db_.Prepare(R"sql(
      SELECT 1 FROM judgments WHERE worker_id = ?1 AND pair_id = ?2
      UNION ALL
      SELECT 1 FROM tasks WHERE pair_id = ?2
        AND ((status = 'ASSIGNED' AND assigned_worker = ?1)
             OR (status = 'REPUBLISHED' AND restricted_to = ?1)))sql");
    st.Bind(1, worker_id).Bind(2, pair_id);
    return st.Step();
  }

  static Task ReadTask(const Statement &st) {
    Task t;
    t.task_id = st.Int(0);
    t.pair_id = st.Text(1);
    t.status = TaskStatusFromName(st.Text(2));
    t.assigned_worker = st.OptText(3);
    t.restricted_to = st.OptText(4);
    return t;
  }

  std::optional<Task> LoadTask(int64_t task_id) {
    auto st = db_.Prepare("SELECT task_id, pair_id, status, assigned_worker, restricted_to "
                          "FROM tasks WHERE task_id = ?");
    st.Bind(1, task_id);
    if (!st.Step()) return std::nullopt;
    return ReadTask(st);
  }

  TaskAssignment LoadAssignment(int64_t task_id) {
    TaskAssignment out;
    out.task = *LoadTask(task_id);
    auto st = db_.Prepare("SELECT sentence_a, sentence_b FROM pairs WHERE pair_id = ?");
    st.Bind(1, out.task.pair_id);
    if (st.Step()) {
      out.sentence_a = st.Text(0);
      out.sentence_b = st.Text(1);
    }
    return out;
  }

  std::vector<Judgment> LoadJudgments(const std::optional<std::string> &pair_id) {
    std::string sql =
        "SELECT judgment_id, task_id, pair_id, worker_id, consistency, lexical, phrasal, "
        "sentential, phenomena, created_at, status FROM judgments";
    if (pair_id) sql += " WHERE pair_id = ?";
    sql += " ORDER BY judgment_id";
    auto st = db_.Prepare(sql);
    if (pair_id) st.Bind(1, *pair_id);
    std::vector<Judgment> out;
    while (st.Step()) {
      Judgment j;
      j.judgment_id = st.Int(0);
      j.task_id = st.Int(1);
      j.pair_id = st.Text(2);
      j.worker_id = st.Text(3);
      for (int c = 0; c < 4; ++c) j.scores[static_cast<size_t>(c)] = static_cast<int>(st.Int(4 + c));
      Json ph = Json::parse(st.Text(8));
      for (size_t k = 0; k < 6; ++k) j.phenomena[k] = ph.value(kPhenomena[k], 0);
      j.timestamp = st.Int(9);
      j.valid = st.Text(10) == "VALID";
      out.push_back(std::move(j));
    }
    return out;
  }

  std::vector<WorkerReliability> LoadReliability() {
    std::vector<WorkerReliability> out;
    auto st = db_.Prepare(
        "SELECT worker_id, overlap, kappa_consistency, kappa_lexical, kappa_phrasal, "
        "kappa_sentential, trusted, flagged FROM reliability ORDER BY worker_id");
    while (st.Step()) {
      WorkerReliability r;
      r.worker_id = st.Text(0);
      r.overlap = static_cast<size_t>(st.Int(1));
      for (int c = 0; c < 4; ++c) r.kappa[static_cast<size_t>(c)] = st.OptReal(2 + c);
      r.trusted = st.Int(6) != 0;
      r.flagged = st.Int(7) != 0;
      out.push_back(std::move(r));
    }
    return out;
  }

  ServiceConfig cfg_;
  std::function<int64_t()> clock_;
  std::mutex mu_;
  Database db_;
};

inline Json TaskToJson(const Task &t) {
  Json j = {{"task_id", t.task_id}, {"pair_id", t.pair_id}, {"status", TaskStatusName(t.status)}};
  j["assigned_worker"] = t.assigned_worker ? Json(*t.assigned_worker) : Json(nullptr);
  j["restricted_to"] = t.restricted_to ? Json(*t.restricted_to) : Json(nullptr);
  return j;
}

inline Json AssignmentToJson(const TaskAssignment &a) {
  Json j = TaskToJson(a.task);
  j["sentence_a"] = a.sentence_a;
  j["sentence_b"] = a.sentence_b;
  return j;
}

inline Json JudgmentToJson(const Judgment &j) {
  Json out = {{"judgment_id", j.judgment_id}, {"task_id", j.task_id},
              {"pair_id", j.pair_id},         {"worker_id", j.worker_id},
              {"timestamp", j.timestamp},     {"status", j.valid ? "VALID" : "VOID"}};
  for (size_t c = 0; c < 4; ++c) out[kCriteria[c]] = j.scores[c];
  out["phenomena"] = PhenomenaToJson(j.phenomena);
  return out;
}

// Field errors map to 400 (missing or mistyped) and 422 (out of range).
inline JudgmentInput JudgmentInputFromJson(const Json &body) {
  if (!body.is_object()) throw ServiceError(ServiceErrc::kBadRequest, "body must be an object");
  JudgmentInput in;
  auto it = body.find("task_id");
  if (it == body.end() || !it->is_number_integer()) {
    throw ServiceError(ServiceErrc::kBadRequest, "task_id must be an integer");
  }
  in.task_id = it->get<int64_t>();
  it = body.find("worker_id");
  if (it == body.end() || !it->is_string()) {
    throw ServiceError(ServiceErrc::kBadRequest, "worker_id must be a string");
  }
  in.worker_id = it->get<std::string>();
  for (size_t c = 0; c < 4; ++c) {
    it = body.find(kCriteria[c]);
    if (it == body.end() || !it->is_number()) {
      throw ServiceError(ServiceErrc::kBadRequest, std::string(kCriteria[c]) + " is required");
    }
    if (!it->is_number_integer()) {
      throw ServiceError(ServiceErrc::kOutOfRange,
                         std::string(kCriteria[c]) + " must be an integer in 1..5");
    }
    int64_t v = it->get<int64_t>();
    in.scores[c] = (v < 0 || v > 100) ? 0 : static_cast<int>(v);
  }
  it = body.find("phenomena");
  if (it != body.end() && !it->is_null()) {
    if (!it->is_object()) throw ServiceError(ServiceErrc::kBadRequest, "phenomena must be an object");
    for (const auto &[name, count] : it->items()) {
      if (!count.is_number_integer()) {
        throw ServiceError(ServiceErrc::kOutOfRange, "phenomenon counts must be integers");
      }
      int64_t v = count.get<int64_t>();
      in.phenomena[name] = v < 0 ? -1 : static_cast<int>(std::min<int64_t>(v, 1'000'000));
    }
  }
  return in;
}

inline Json ReliabilityToJson(const WorkerReliability &r) {
  Json j = {{"worker_id", r.worker_id},
            {"overlap", r.overlap},
            {"trusted", r.trusted},
            {"flagged", r.flagged}};
  j["kappa"] = r.kappa[0] ? Json(*r.kappa[0]) : Json(nullptr);
  Json per = Json::object();
  for (size_t c = 0; c < 4; ++c) per[kCriteria[c]] = r.kappa[c] ? Json(*r.kappa[c]) : Json(nullptr);
  j["kappa_by_criterion"] = per;
  return j;
}

inline Json AggregateToJson(const PairAggregate &a) {
  Json j = {{"pair_id", a.pair_id},
            {"valid_judgments", a.valid_judgments},
            {"status", a.pending ? "pending" : "complete"}};
  if (!a.pending) {
    for (size_t c = 0; c < 4; ++c) j[std::string(kCriteria[c]) + "_mean"] = a.means[c];
    Json ph = Json::object();
    for (size_t k = 0; k < 6; ++k) ph[kPhenomena[k]] = a.phenomena_means[k];
    j["phenomena_means"] = ph;
  }
  return j;
}

inline Json RepublishReportToJson(const RepublishReport &r) {
  return {{"flagged_workers", r.flagged_workers}, {"voided", r.voided},
          {"republished", r.republished},         {"assigned_to", r.assigned_to},
          {"unrestricted", r.unrestricted}};
}

}  // namespace paramine::annotation

#endif  // PARAMINE_ANNOTATION_SERVICE_HPP_
