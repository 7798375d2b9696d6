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

#ifndef PARAMINE_ANNOTATION_STORE_HPP_
#define PARAMINE_ANNOTATION_STORE_HPP_

#include <sqlite3.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "paramine/error.hpp"

namespace paramine::annotation {

class StoreError : public Error {
 public:
  using Error::Error;
};

class Statement {
 public:
  Statement(sqlite3 *db, std::string_view sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &stmt_, nullptr) !=
        SQLITE_OK) {
      throw StoreError(std::string("prepare failed: ") + sqlite3_errmsg(db));
    }
  }
  Statement(const Statement &) = delete;
  Statement &operator=(const Statement &) = delete;
  ~Statement() { sqlite3_finalize(stmt_); }

  Statement &Bind(int idx, int64_t v) {
    Check(sqlite3_bind_int64(stmt_, idx, v));
    return *this;
  }
  Statement &Bind(int idx, int v) { return Bind(idx, static_cast<int64_t>(v)); }
  Statement &Bind(int idx, double v) {
    Check(sqlite3_bind_double(stmt_, idx, v));
    return *this;
  }
  Statement &Bind(int idx, std::string_view v) {
    Check(sqlite3_bind_text(stmt_, idx, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement &Bind(int idx, const char *v) { return Bind(idx, std::string_view(v)); }
  Statement &Bind(int idx, const std::string &v) { return Bind(idx, std::string_view(v)); }
  Statement &BindNull(int idx) {
    Check(sqlite3_bind_null(stmt_, idx));
    return *this;
  }
  template <typename T>
  Statement &Bind(int idx, const std::optional<T> &v) {
    return v ? Bind(idx, *v) : BindNull(idx);
  }

  // True while a row is available.
  bool Step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw StoreError(std::string("step failed: ") + sqlite3_errmsg(db_));
  }
  void Run() {
    while (Step()) {
    }
  }

  bool IsNull(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }
  double Real(int col) const { return sqlite3_column_double(stmt_, col); }
  std::string Text(int col) const {
    const auto *p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char *>(p),
                           static_cast<size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  std::optional<std::string> OptText(int col) const {
    if (IsNull(col)) return std::nullopt;
    return Text(col);
  }
  std::optional<double> OptReal(int col) const {
    if (IsNull(col)) return std::nullopt;
    return Real(col);
  }

 private:
  void Check(int rc) {
    if (rc != SQLITE_OK) throw StoreError(std::string("bind failed: ") + sqlite3_errmsg(db_));
  }

  sqlite3 *db_;
  sqlite3_stmt *stmt_ = nullptr;
};

class Database {
 public:
  explicit Database(const std::string &path) {
    if (sqlite3_open_v2(path.c_str(), &db_,
                        SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX,
                        nullptr) != SQLITE_OK) {
      std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
      sqlite3_close(db_);
      throw StoreError("cannot open store " + path + ": " + msg);
    }
    sqlite3_busy_timeout(db_, 5000);
    Exec("PRAGMA foreign_keys = ON");
  }
  Database(const Database &) = delete;
  Database &operator=(const Database &) = delete;
  ~Database() { sqlite3_close(db_); }

  void Exec(const std::string &sql) {
    char *err = nullptr;
    if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown";
      sqlite3_free(err);
      throw StoreError("exec failed: " + msg);
    }
  }
  Statement Prepare(std::string_view sql) { return Statement(db_, sql); }
  int64_t LastInsertId() const { return sqlite3_last_insert_rowid(db_); }
  int Changes() const { return sqlite3_changes(db_); }
  sqlite3 *handle() { return db_; }

 private:
  sqlite3 *db_ = nullptr;
};

// Rolls back unless Commit() was called.
class Transaction {
 public:
  explicit Transaction(Database &db) : db_(db) { db_.Exec("BEGIN IMMEDIATE"); }
  Transaction(const Transaction &) = delete;
  Transaction &operator=(const Transaction &) = delete;
  ~Transaction() {
    if (!done_) {
      try {
        db_.Exec("ROLLBACK");
      } catch (...) {
      }
    }
  }
  void Commit() {
    db_.Exec("COMMIT");
    done_ = true;
  }

 private:
  Database &db_;
  bool done_ = false;
};

inline constexpr const char *kSchema = R"sql(
CREATE TABLE IF NOT EXISTS workers (
  worker_id TEXT PRIMARY KEY,
  role TEXT NOT NULL DEFAULT 'worker' CHECK (role IN ('worker', 'admin'))
);
CREATE TABLE IF NOT EXISTS pairs (
  pair_id TEXT PRIMARY KEY,
  sentence_a TEXT NOT NULL,
  sentence_b TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS tasks (
  task_id INTEGER PRIMARY KEY AUTOINCREMENT,
  pair_id TEXT NOT NULL REFERENCES pairs (pair_id),
  status TEXT NOT NULL CHECK (status IN ('OPEN', 'ASSIGNED', 'DONE', 'REPUBLISHED')),
  assigned_worker TEXT,
  restricted_to TEXT
);
CREATE INDEX IF NOT EXISTS tasks_by_pair ON tasks (pair_id);
CREATE TABLE IF NOT EXISTS judgments (
  judgment_id INTEGER PRIMARY KEY AUTOINCREMENT,
  task_id INTEGER NOT NULL REFERENCES tasks (task_id),
  pair_id TEXT NOT NULL REFERENCES pairs (pair_id),
  worker_id TEXT NOT NULL REFERENCES workers (worker_id),
  consistency INTEGER NOT NULL CHECK (consistency BETWEEN 1 AND 5),
  lexical INTEGER NOT NULL CHECK (lexical BETWEEN 1 AND 5),
  phrasal INTEGER NOT NULL CHECK (phrasal BETWEEN 1 AND 5),
  sentential INTEGER NOT NULL CHECK (sentential BETWEEN 1 AND 5),
  phenomena TEXT NOT NULL,
  created_at INTEGER NOT NULL,
  status TEXT NOT NULL DEFAULT 'VALID' CHECK (status IN ('VALID', 'VOID')),
  UNIQUE (pair_id, worker_id)
);
CREATE TRIGGER IF NOT EXISTS judgments_append_only
  BEFORE DELETE ON judgments
  BEGIN SELECT RAISE(ABORT, 'judgments are append-only'); END;
CREATE TABLE IF NOT EXISTS reliability (
  worker_id TEXT PRIMARY KEY REFERENCES workers (worker_id),
  overlap INTEGER NOT NULL,
  kappa_consistency REAL,
  kappa_lexical REAL,
  kappa_phrasal REAL,
  kappa_sentential REAL,
  trusted INTEGER NOT NULL,
  flagged INTEGER NOT NULL,
  computed_at INTEGER NOT NULL
);
)sql";

}  // namespace paramine::annotation

#endif  // PARAMINE_ANNOTATION_STORE_HPP_
