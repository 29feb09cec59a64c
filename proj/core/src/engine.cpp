// Copyright 2026 The logveil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "logveil/engine.hpp"

#include <sstream>
#include <thread>
#include <unordered_map>

#include "logveil/prefix_preserving.hpp"
#include "logveil/prf.hpp"

namespace logveil {

namespace {

struct ClassPlan {
  int level = 0;
  LevelParams params;
  const KeyedPrf* prf = nullptr;
  std::string ns;  // pseudonym namespace for text classes
};

struct WorkerState {
  // Memo tables: identical inputs under one plan always map identically, so
  // repeated values skip the PRF.  Caches are per worker; they only
  // short-circuit recomputation and cannot change results.
  std::array<std::unordered_map<std::uint32_t, std::uint32_t>, kFieldClassCount> addr;
  std::array<std::unordered_map<std::uint16_t, std::uint16_t>, kFieldClassCount> port;
  std::array<std::unordered_map<std::string, std::string>, kFieldClassCount> text;
  std::array<std::size_t, kFieldClassCount> transformed{};
  std::size_t saturations = 0;
};

void transform_field(LogRecord& rec, std::size_t i, const ClassPlan& plan,
                     WorkerState& state) {
  if (plan.level == 0) return;
  const FieldValue& value = rec.field(i).value;
  const FieldClass cls = value.cls();
  const auto ci = static_cast<std::size_t>(cls);

  switch (ladder_of(cls)) {
    case LadderKind::Address: {
      const std::uint32_t in = value.address().bits;
      std::uint32_t out = 0;
      if (plan.level == 1 || plan.level == 2) {
        auto& cache = state.addr[ci];
        if (const auto it = cache.find(in); it != cache.end()) {
          out = it->second;
        } else {
          out = plan.level == 1 ? pp_anonymize(Ipv4{in}, *plan.prf).bits
                                : address_permute(Ipv4{in}, *plan.prf).bits;
          cache.emplace(in, out);
        }
      } else if (plan.level == 3) {
        out = truncate_address(Ipv4{in}, plan.params.truncate_bits).bits;
      } else {
        out = 0;  // black
      }
      rec.set_value(i, FieldValue(cls, Ipv4{out}));
      ++state.transformed[ci];
      break;
    }
    case LadderKind::PortLadder: {
      const Port in = value.port();
      Port out = 0;
      if (plan.level == 1 || plan.level == 2) {
        auto& cache = state.port[ci];
        if (const auto it = cache.find(in); it != cache.end()) {
          out = it->second;
        } else {
          out = plan.level == 1 ? port_bilateral(in, *plan.prf, plan.params.boundary)
                                : port_permute(in, *plan.prf);
          cache.emplace(in, out);
        }
      }
      rec.set_value(i, FieldValue(cls, out));
      ++state.transformed[ci];
      break;
    }
    case LadderKind::Time: {
      if (plan.level == 3) return;  // handled by the whole-stream stage
      const UtcMicros in = value.time();
      UtcMicros out{0};
      if (plan.level == 1) {
        out = ts_reduce_precision(in, plan.params.unit);
      } else if (plan.level == 2) {
        const ShiftedTime shifted = ts_shift(in, *plan.prf, plan.ns);
        out = shifted.value;
        if (shifted.saturated) ++state.saturations;
      }
      rec.set_value(i, FieldValue(cls, out));
      ++state.transformed[ci];
      break;
    }
    case LadderKind::Text: {
      const std::string& in = value.text();
      if (in == "-") return;  // the format's own null marker carries nothing
      if (plan.level == 1) {
        auto& cache = state.text[ci];
        std::string out;
        if (const auto it = cache.find(in); it != cache.end()) {
          out = it->second;
        } else {
          out = keyed_pseudonym(in, *plan.prf, plan.ns);
          cache.emplace(in, out);
        }
        rec.set_value(i, FieldValue(cls, std::move(out)));
      } else {
        rec.set_value(i, FieldValue(cls, std::string("-")));
      }
      ++state.transformed[ci];
      break;
    }
    case LadderKind::Flat: {
      rec.set_value(i, black_mark(value));
      ++state.transformed[ci];
      break;
    }
  }
}

}  // namespace

ApplyResult apply_profile(const LogStream& input, const Profile& profile,
                          const KeyChain& keys, const ApplyOptions& options) {
  ApplyResult result;
  result.report.profile_name = profile.name();
  result.report.profile_digest = profile.digest();
  result.report.records = input.records.size();

  // One PRF per referenced key id; per-stream scope swaps in a derived
  // subkey so two streams never share a pseudonym space.
  std::unordered_map<std::string, std::unique_ptr<KeyedPrf>> prfs;
  std::array<ClassPlan, kFieldClassCount> plans;
  for (int c = 0; c < kFieldClassCount; ++c) {
    const auto cls = static_cast<FieldClass>(c);
    const Assignment& a = profile.assignment(cls);
    ClassPlan& plan = plans[static_cast<std::size_t>(c)];
    plan.level = a.level;
    plan.params = a.params;
    if (a.level > 0 && level_needs_key(ladder_of(cls), a.level)) {
      const auto it = prfs.find(a.key_id);
      if (it == prfs.end()) {
        const AnonKey* key = keys.find(a.key_id);
        if (key == nullptr) {
          throw KeyError("no loaded key with id '" + a.key_id + "'");
        }
        if (profile.scope() == ConsistencyScope::PerStream) {
          prfs.emplace(a.key_id, make_prf(derive_stream_key(*key, input.source_label)));
        } else {
          prfs.emplace(a.key_id, make_prf(*key));
        }
      }
      plan.prf = prfs.at(a.key_id).get();
    }
    if (ladder_of(cls) == LadderKind::Text) {
      plan.ns = a.params.legacy_namespace ? std::string(kLegacyNamespace)
                                          : std::string(to_string(cls));
    } else if (ladder_of(cls) == LadderKind::Time) {
      // ts_shift keys its offset on the stream identity.
      plan.ns = input.source_label;
    }
  }

  result.stream = input;
  LogStream& out = result.stream;

  unsigned workers = options.workers == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : options.workers;
  if (workers > out.records.size()) {
    workers = static_cast<unsigned>(out.records.size() == 0 ? 1 : out.records.size());
  }

  std::vector<WorkerState> states(workers);
  const auto run_chunk = [&](std::size_t begin, std::size_t end, WorkerState& state) {
    for (std::size_t r = begin; r < end; ++r) {
      LogRecord& rec = out.records[r];
      for (std::size_t i = 0; i < rec.size(); ++i) {
        const auto ci = static_cast<std::size_t>(rec.field(i).value.cls());
        transform_field(rec, i, plans[ci], state);
      }
    }
  };

  if (workers <= 1) {
    run_chunk(0, out.records.size(), states[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t total = out.records.size();
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = total * w / workers;
      const std::size_t end = total * (w + 1) / workers;
      pool.emplace_back(run_chunk, begin, end, std::ref(states[w]));
    }
    for (auto& t : pool) t.join();
  }

  for (const WorkerState& s : states) {
    result.report.shift_saturations += s.saturations;
    for (int c = 0; c < kFieldClassCount; ++c) {
      result.report.transformed[static_cast<std::size_t>(c)] +=
          s.transformed[static_cast<std::size_t>(c)];
    }
  }

  // Whole-stream stage: timestamp enumeration needs a total order over the
  // stream, so it runs once, sequentially, after the per-record pass.
  if (plans[static_cast<std::size_t>(FieldClass::Timestamp)].level == 3) {
    result.report.sequential_stage = true;
    std::size_t ts_fields = 0;
    for (const LogRecord& rec : out.records) {
      for (std::size_t i = 0; i < rec.size(); ++i) {
        if (rec.field(i).value.kind() == ValueKind::Time) ++ts_fields;
      }
    }
    ts_enumerate(out);
    result.report.transformed[static_cast<std::size_t>(FieldClass::Timestamp)] +=
        ts_fields;
  }

  return result;
}

std::string AppliedProfileReport::to_text() const {
  std::ostringstream out;
  out << "profile: " << profile_name << '\n';
  out << "digest: " << profile_digest << '\n';
  out << "records: " << records << '\n';
  out << "sequential-stage: " << (sequential_stage ? "yes" : "no") << '\n';
  out << "shift-saturations: " << shift_saturations << '\n';
  for (int c = 0; c < kFieldClassCount; ++c) {
    const auto n = transformed[static_cast<std::size_t>(c)];
    if (n > 0) {
      out << "transformed " << to_string(static_cast<FieldClass>(c)) << ": " << n << '\n';
    }
  }
  return out.str();
}

namespace {

// Bucket id for one identity mapping space.  Mappings live per key (and per
// level/parameters where those change the permutation), never per field
// name, so an address seen as a source in one record and a destination in
// another stays linkable.
std::string bucket_of(const Profile& profile, FieldClass cls) {
  const Assignment& a = profile.assignment(cls);
  const LadderKind ladder = ladder_of(cls);
  switch (ladder) {
    case LadderKind::Address:
      if (a.level == 1 || a.level == 2) {
        return "addr/" + a.key_id + "/" + std::to_string(a.level);
      }
      break;
    case LadderKind::PortLadder:
      if (a.level == 1 || a.level == 2) {
        return "port/" + a.key_id + "/" + std::to_string(a.level) + "/" +
               std::to_string(a.params.boundary);
      }
      break;
    case LadderKind::Text:
      if (a.level == 1) {
        const std::string ns = a.params.legacy_namespace
                                   ? std::string(kLegacyNamespace)
                                   : std::string(to_string(cls));
        return "text/" + a.key_id + "/" + ns;
      }
      break;
    default:
      break;
  }
  return {};  // not an identity-bearing keyed level
}

}  // namespace

bool check_consistency(std::span<const LogStream> raw,
                       std::span<const LogStream> anonymized,
                       const Profile& profile) {
  if (raw.size() != anonymized.size()) {
    throw std::invalid_argument("check_consistency: stream count mismatch");
  }
  // (bucket, raw value) -> (stream index, anon value) observations.
  std::unordered_map<std::string,
                     std::vector<std::pair<std::size_t, std::string>>>
      observed;

  for (std::size_t s = 0; s < raw.size(); ++s) {
    const LogStream& rs = raw[s];
    const LogStream& as = anonymized[s];
    if (rs.records.size() != as.records.size() || rs.schema != as.schema) {
      throw std::invalid_argument("check_consistency: stream shape mismatch");
    }
    for (std::size_t r = 0; r < rs.records.size(); ++r) {
      const LogRecord& rr = rs.records[r];
      const LogRecord& ar = as.records[r];
      if (rr.size() != ar.size()) {
        throw std::invalid_argument("check_consistency: record arity mismatch");
      }
      for (std::size_t f = 0; f < rr.size(); ++f) {
        const FieldClass cls = rr.field(f).value.cls();
        const std::string bucket = bucket_of(profile, cls);
        if (bucket.empty()) continue;
        const Assignment& a = profile.assignment(cls);
        // The bilateral identity band is shared by design; ports below the
        // boundary carry no pseudonym to be consistent or independent.
        if (ladder_of(cls) == LadderKind::PortLadder && a.level == 1 &&
            rr.field(f).value.port() < a.params.boundary) {
          continue;
        }
        const std::string raw_text = rr.field(f).value.render();
        if (raw_text == "-" && rr.field(f).value.kind() == ValueKind::Text) continue;
        observed[bucket + "\x1f" + raw_text].emplace_back(
            s, ar.field(f).value.render());
      }
    }
  }

  const bool per_stream = profile.scope() == ConsistencyScope::PerStream;
  for (const auto& [key, sightings] : observed) {
    // Within one stream the mapping must be a function regardless of scope.
    std::unordered_map<std::size_t, std::string> per_stream_value;
    for (const auto& [stream, value] : sightings) {
      const auto [it, inserted] = per_stream_value.emplace(stream, value);
      if (!inserted && it->second != value) return false;
    }
    if (per_stream_value.size() < 2) continue;
    std::unordered_map<std::string, std::size_t> streams_per_value;
    for (const auto& [stream, value] : per_stream_value) {
      ++streams_per_value[value];
    }
    if (per_stream) {
      // Independence: no pseudonym may repeat across streams.
      for (const auto& [value, streams] : streams_per_value) {
        if (streams > 1) return false;
      }
    } else {
      // Consistency: all streams must agree on one pseudonym.
      if (streams_per_value.size() != 1) return false;
    }
  }
  return true;
}

}  // namespace logveil
