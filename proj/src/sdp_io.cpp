// Copyright 2026 The dmqkd Authors
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

// Plain-text exchange format for SDP instances:
//
//   dmqkd-sdp 1
//   name <token>
//   sense min|max
//   dim <n>
//   trace_bound <t>
//   embedded 0|1
//   objective <nnz>
//   <i> <j> <value>          (upper triangle, 0-based)
//   constraint le|eq|ge <rhs> <nnz> <name>
//   <i> <j> <value>
//   ...
//   end
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dmqkd/error.hpp"
#include "dmqkd/sdp.hpp"

namespace dmqkd {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_triplets(std::ostream& os, const RMatrix& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = i; j < A.cols(); ++j) {
      if (A(i, j) != 0.0) os << i << ' ' << j << ' ' << num(A(i, j)) << '\n';
    }
  }
}

long count_nnz(const RMatrix& A) {
  long n = 0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = i; j < A.cols(); ++j) n += A(i, j) != 0.0;
  }
  return n;
}

const char* kind_token(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::LessEqual: return "le";
    case ConstraintKind::Equal: return "eq";
    case ConstraintKind::GreaterEqual: return "ge";
  }
  return "eq";
}

[[noreturn]] void bad(const std::string& what) {
  throw InvalidArgument("read_problem: " + what);
}

std::string expect_key(std::istream& is, const std::string& key) {
  std::string tok;
  if (!(is >> tok) || tok != key) bad("expected '" + key + "'");
  return tok;
}

RMatrix read_triplets(std::istream& is, int dim, long nnz) {
  RMatrix A = RMatrix::Zero(dim, dim);
  for (long t = 0; t < nnz; ++t) {
    long i, j;
    double v;
    if (!(is >> i >> j >> v)) bad("truncated entry list");
    if (i < 0 || j < 0 || i >= dim || j >= dim) bad("entry index out of range");
    A(i, j) = v;
    A(j, i) = v;
  }
  return A;
}

}  // namespace

void write_problem(std::ostream& os, const SdpProblem& p) {
  os << "dmqkd-sdp 1\n";
  os << "name " << (p.name.empty() ? "unnamed" : p.name) << '\n';
  os << "sense " << (p.sense == Sense::Minimize ? "min" : "max") << '\n';
  os << "dim " << p.dim() << '\n';
  os << "trace_bound " << num(p.trace_bound) << '\n';
  os << "embedded " << (p.embedded ? 1 : 0) << '\n';
  os << "objective " << count_nnz(p.C) << '\n';
  write_triplets(os, p.C);
  for (const auto& c : p.constraints) {
    os << "constraint " << kind_token(c.kind) << ' ' << num(c.rhs) << ' ' << count_nnz(c.A)
       << ' ' << c.name << '\n';
    write_triplets(os, c.A);
  }
  os << "end\n";
}

SdpProblem read_problem(std::istream& is) {
  SdpProblem p;
  std::string tok;
  int version = 0;
  expect_key(is, "dmqkd-sdp");
  if (!(is >> version) || version != 1) bad("unsupported version");
  expect_key(is, "name");
  is >> p.name;
  expect_key(is, "sense");
  is >> tok;
  if (tok == "min") p.sense = Sense::Minimize;
  else if (tok == "max") p.sense = Sense::Maximize;
  else bad("unknown sense '" + tok + "'");
  int dim = 0;
  expect_key(is, "dim");
  if (!(is >> dim) || dim <= 0) bad("bad dimension");
  expect_key(is, "trace_bound");
  is >> p.trace_bound;
  int emb = 0;
  expect_key(is, "embedded");
  is >> emb;
  p.embedded = emb != 0;
  long nnz = 0;
  expect_key(is, "objective");
  if (!(is >> nnz) || nnz < 0) bad("bad objective count");
  p.C = read_triplets(is, dim, nnz);
  while (is >> tok) {
    if (tok == "end") {
      p.validate();
      return p;
    }
    if (tok != "constraint") bad("unexpected token '" + tok + "'");
    SdpConstraint c;
    std::string kind;
    if (!(is >> kind >> c.rhs >> nnz >> c.name)) bad("truncated constraint header");
    if (kind == "le") c.kind = ConstraintKind::LessEqual;
    else if (kind == "eq") c.kind = ConstraintKind::Equal;
    else if (kind == "ge") c.kind = ConstraintKind::GreaterEqual;
    else bad("unknown constraint kind '" + kind + "'");
    c.A = read_triplets(is, dim, nnz);
    p.constraints.push_back(std::move(c));
  }
  bad("missing 'end'");
}

}  // namespace dmqkd
