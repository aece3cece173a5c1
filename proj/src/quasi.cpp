// Copyright 2026 The qlrhv Authors
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

#include "qlrhv/quasi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <array>
#include <fstream>
#include <limits>
#include <numeric>

#include "qlrhv/error.hpp"
#include "tensor.hpp"

namespace qlrhv {

namespace {

constexpr std::size_t kMaxWeights = std::size_t{1} << 31;

// Per-qubit map from the interleaved (row bit, column bit) digit 2i+j of a
// density matrix to Pauli coefficients: c_mu = sum_ij rho_ij (sigma_mu)_ji.
const Complex kToPauli[4][4] = {
    {1.0, 0.0, 0.0, 1.0},
    {0.0, 1.0, 1.0, 0.0},
    {0.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 0.0},
    {1.0, 0.0, 0.0, -1.0},
};

// (sigma_mu)_ij / 2, indexed [2i+j][mu].
const Complex kFromPauli[4][4] = {
    {0.5, 0.0, 0.0, 0.5},
    {0.0, 0.5, Complex(0.0, -0.5), 0.0},
    {0.0, 0.5, Complex(0.0, 0.5), 0.0},
    {0.5, 0.0, 0.0, -0.5},
};

std::size_t interleave(std::size_t row, std::size_t col, std::size_t num_qubits) {
  std::size_t index = 0;
  for (std::size_t r = 0; r < num_qubits; ++r) {
    const std::size_t shift = num_qubits - 1 - r;
    index = index * 4 + 2 * ((row >> shift) & 1U) + ((col >> shift) & 1U);
  }
  return index;
}

// Component mu of the 4-vector (1, s * n).
double four_vector(const Vec3& n, std::size_t mu, double s) { return mu == 0 ? 1.0 : s * n[static_cast<int>(mu - 1)]; }

void snap(RealMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double& v = m(i, j);
      if (std::abs(v) < 1e-14) v = 0.0;
      if (std::abs(v - 1.0) < 1e-14) v = 1.0;
    }
  }
}

}  // namespace

std::size_t tuple_index(std::span<const std::size_t> digits, std::size_t frame_size) {
  std::size_t index = 0;
  for (std::size_t d : digits) {
    if (d >= frame_size) {
      throw BadDirectionIndex("direction index " + std::to_string(d) + " out of range for frame of size " +
                              std::to_string(frame_size));
    }
    index = index * frame_size + d;
  }
  return index;
}

std::vector<std::size_t> tuple_digits(std::size_t index, std::size_t num_qubits, std::size_t frame_size) {
  std::vector<std::size_t> digits(num_qubits);
  for (std::size_t r = num_qubits; r-- > 0;) {
    digits[r] = index % frame_size;
    index /= frame_size;
  }
  if (index != 0) throw BadDirectionIndex("tuple index out of range");
  return digits;
}

QuasiState::QuasiState(Frame frame, std::size_t num_qubits, std::vector<double> weights)
    : frame_(std::move(frame)), num_qubits_(num_qubits), weights_(std::move(weights)) {
  if (num_qubits_ == 0 || num_qubits_ > kMaxQubits) {
    throw ShapeError("quasi states support 1.." + std::to_string(kMaxQubits) + " qubits");
  }
  if (weights_.size() != ipow(frame_.size(), num_qubits_)) {
    throw ShapeError("weight vector length " + std::to_string(weights_.size()) + " is not frame size ^ N");
  }
}

QuasiState QuasiState::uniform(Frame frame, std::size_t num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxQubits) throw ShapeError("qubit count out of range");
  const std::size_t count = ipow(frame.size(), num_qubits);
  if (count > kMaxWeights) throw ShapeError("weight vector too large");
  std::vector<double> w(count, 1.0 / static_cast<double>(count));
  return QuasiState(std::move(frame), num_qubits, std::move(w));
}

double QuasiState::total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

double QuasiState::min_weight() const { return weights_[argmin()]; }

std::size_t QuasiState::argmin() const {
  return static_cast<std::size_t>(std::min_element(weights_.begin(), weights_.end()) - weights_.begin());
}

double TransitionMatrix::column_sum_error() const {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < entries.cols(); ++j) worst = std::max(worst, std::abs(entries.col(j).sum() - 1.0));
  return worst;
}

ComplexMatrix q_operator(const Frame& frame, std::span<const std::size_t> digits) {
  const double f = static_cast<double>(frame.size());
  ComplexMatrix q = ComplexMatrix::Identity(1, 1);
  for (std::size_t d : digits) {
    if (d >= frame.size()) {
      throw BadDirectionIndex("direction index " + std::to_string(d) + " out of range for frame of size " +
                              std::to_string(frame.size()));
    }
    const Vec3& n = frame[d];
    ComplexMatrix factor(2, 2);
    factor << 1.0 + 3.0 * n.z(), 3.0 * Complex(n.x(), -n.y()), 3.0 * Complex(n.x(), n.y()), 1.0 - 3.0 * n.z();
    q = kron(q, factor / f);
  }
  return q;
}

std::vector<double> pauli_coefficients(const DensityOperator& rho) {
  const std::size_t n = rho.num_qubits();
  const std::size_t dim = rho.dim();
  std::vector<Complex> x(dim * dim);
  const ComplexMatrix& m = rho.matrix();
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      x[interleave(i, j, n)] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    x = detail::mode_product(x, ipow(4, r), 4, ipow(4, n - 1 - r), 4,
                             [](std::size_t mu, std::size_t ij) { return kToPauli[mu][ij]; });
  }
  std::vector<double> c(x.size());
  std::transform(x.begin(), x.end(), c.begin(), [](const Complex& v) { return v.real(); });
  return c;
}

DensityOperator density_from_pauli(std::span<const double> coefficients, std::size_t num_qubits) {
  if (coefficients.size() != ipow(4, num_qubits)) throw ShapeError("expected 4^N Pauli coefficients");
  std::vector<Complex> x(coefficients.begin(), coefficients.end());
  for (std::size_t r = 0; r < num_qubits; ++r) {
    x = detail::mode_product(x, ipow(4, r), 4, ipow(4, num_qubits - 1 - r), 4,
                             [](std::size_t ij, std::size_t mu) { return kFromPauli[ij][mu]; });
  }
  const std::size_t dim = ipow(2, num_qubits);
  ComplexMatrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[interleave(i, j, num_qubits)];
    }
  }
  m = (m + m.adjoint().eval()) * 0.5;
  return DensityOperator(std::move(m), num_qubits);
}

QuasiState quasi_from_density(const DensityOperator& rho, const Frame& frame) {
  const std::size_t n = rho.num_qubits();
  const std::size_t f = frame.size();
  std::vector<double> x = pauli_coefficients(rho);
  const double scale = 1.0 / static_cast<double>(f);
  for (std::size_t r = 0; r < n; ++r) {
    x = detail::mode_product(x, ipow(f, r), 4, ipow(4, n - 1 - r), f, [&](std::size_t d, std::size_t mu) {
      return scale * four_vector(frame[d], mu, 3.0);
    });
  }
  return QuasiState(frame, n, std::move(x));
}

DensityOperator density_from_quasi(const QuasiState& w) {
  const std::size_t n = w.num_qubits();
  if (n > DensityOperator::kMaxQubits) throw ShapeError("reconstruction supports at most 10 qubits");
  const Frame& frame = w.frame();
  const std::size_t f = frame.size();
  std::vector<double> x(w.weights().begin(), w.weights().end());
  for (std::size_t r = 0; r < n; ++r) {
    x = detail::mode_product(x, ipow(4, r), f, ipow(f, n - 1 - r), 4,
                             [&](std::size_t mu, std::size_t d) { return four_vector(frame[d], mu, 1.0); });
  }
  return density_from_pauli(x, n);
}

double correlation_quasi(const QuasiState& w, const MeasurementSpec& spec) {
  const std::size_t n = w.num_qubits();
  if (spec.size() != n) throw ShapeError("measurement spec length does not match qubit count");
  const Frame& frame = w.frame();
  const std::size_t f = frame.size();
  std::vector<double> x(w.weights().begin(), w.weights().end());
  // Contract the least significant qubit first so the live tensor stays contiguous.
  for (std::size_t r = n; r-- > 0;) {
    const Axis& a = spec.axes[r];
    x = detail::mode_product(x, ipow(f, r), f, 1, 1, [&](std::size_t, std::size_t d) { return a.dot_m(frame[d]); });
  }
  return x[0];
}

TransitionMatrix transition_matrix(const ComplexMatrix& u, const Frame& frame, std::vector<std::size_t> targets) {
  std::size_t k = 0;
  while (ipow(2, k) < static_cast<std::size_t>(u.rows())) ++k;
  if (u.rows() != u.cols() || ipow(2, k) != static_cast<std::size_t>(u.rows()) || k == 0) {
    throw BadUnitary("transition matrix needs a square 2^k unitary");
  }
  if (!is_unitary(u)) throw BadUnitary("matrix is not unitary within tolerance");
  if (targets.size() != k) throw BadTargets("target count does not match the unitary size");
  check_targets(targets, std::numeric_limits<std::size_t>::max());

  const std::size_t f = frame.size();
  const std::size_t count = ipow(f, k);
  TransitionMatrix t{RealMatrix(count, count), std::move(targets), u, f};
  for (std::size_t col = 0; col < count; ++col) {
    ComplexMatrix proj = ComplexMatrix::Identity(1, 1);
    for (std::size_t d : tuple_digits(col, k, f)) proj = kron(proj, bloch_projector(frame[d]));
    const DensityOperator evolved(u * proj * u.adjoint(), k);
    const QuasiState w = quasi_from_density(evolved, frame);
    for (std::size_t row = 0; row < count; ++row) t.entries(row, col) = w[row];
  }
  snap(t.entries);
  return t;
}

TransitionMatrix transition_matrix(const ComplexMatrix& u, const Frame& frame) {
  std::size_t k = 0;
  while (ipow(2, k) < static_cast<std::size_t>(u.rows())) ++k;
  std::vector<std::size_t> targets(k);
  std::iota(targets.begin(), targets.end(), std::size_t{0});
  return transition_matrix(u, frame, std::move(targets));
}

void apply_gate_in_place(QuasiState& w, const TransitionMatrix& t) {
  const std::size_t n = w.num_qubits();
  const std::size_t f = w.frame().size();
  if (t.frame_size != f) throw ShapeError("transition matrix built for a different frame size");
  check_targets(t.targets, n);
  const std::size_t k = t.targets.size();
  const std::size_t block = ipow(f, k);
  if (static_cast<std::size_t>(t.entries.rows()) != block || static_cast<std::size_t>(t.entries.cols()) != block) {
    throw ShapeError("transition matrix size does not match its targets");
  }

  std::vector<std::size_t> stride(n);
  for (std::size_t r = 0; r < n; ++r) stride[r] = ipow(f, n - 1 - r);
  std::vector<std::size_t> offsets(block, 0);
  for (std::size_t j = 0; j < block; ++j) {
    const auto digits = tuple_digits(j, k, f);
    for (std::size_t s = 0; s < k; ++s) offsets[j] += digits[s] * stride[t.targets[s]];
  }
  std::vector<std::size_t> rest_stride;
  for (std::size_t r = 0; r < n; ++r) {
    if (std::find(t.targets.begin(), t.targets.end(), r) == t.targets.end()) rest_stride.push_back(stride[r]);
  }
  // Row-major copy of T for the inner product loop.
  std::vector<double> rows(block * block);
  for (std::size_t r = 0; r < block; ++r) {
    for (std::size_t c = 0; c < block; ++c) {
      rows[r * block + c] = t.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }

  double* data = w.weights().data();
  const auto blocks = static_cast<std::int64_t>(ipow(f, n - k));
#ifdef QLRHV_HAVE_OPENMP
#pragma omp parallel if (blocks > 256)
#endif
  {
    std::vector<double> in(block), out(block);
#ifdef QLRHV_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t b = 0; b < blocks; ++b) {
      std::size_t rest = static_cast<std::size_t>(b);
      std::size_t base = 0;
      for (std::size_t s = rest_stride.size(); s-- > 0;) {
        base += (rest % f) * rest_stride[s];
        rest /= f;
      }
      for (std::size_t j = 0; j < block; ++j) in[j] = data[base + offsets[j]];
      for (std::size_t r = 0; r < block; ++r) {
        const double* row = rows.data() + r * block;
        double acc = 0.0;
        for (std::size_t c = 0; c < block; ++c) acc += row[c] * in[c];
        out[r] = acc;
      }
      for (std::size_t j = 0; j < block; ++j) data[base + offsets[j]] = out[j];
    }
  }
}

QuasiState apply_gate(const QuasiState& w, const TransitionMatrix& t) {
  QuasiState out = w;
  apply_gate_in_place(out, t);
  return out;
}

QuasiState evolve(const QuasiState& w, const Circuit& circuit) {
  if (circuit.num_qubits() != w.num_qubits()) throw ShapeError("circuit width does not match the quasi state");
  QuasiState out = w;
  for (const Gate& g : circuit.gates()) apply_gate_in_place(out, transition_matrix(g.matrix, w.frame(), g.targets));
  return out;
}

QuasiState canonicalize(const QuasiState& w) {
  if (w.frame().kind() == FrameKind::tetrahedron) return w;
  QuasiState out = w;
  const ComplexMatrix id = gates::identity(1);
  for (std::size_t r = 0; r < w.num_qubits(); ++r) apply_gate_in_place(out, transition_matrix(id, w.frame(), {r}));
  return out;
}

QuasiState quasi_product(const QuasiState& a, const QuasiState& b) {
  if (!(a.frame() == b.frame())) throw ShapeError("quasi product needs a common frame");
  const std::size_t n = a.num_qubits() + b.num_qubits();
  if (n > QuasiState::kMaxQubits) throw ShapeError("quasi product exceeds the qubit limit");
  std::vector<double> w(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) w[i * b.size() + j] = a[i] * b[j];
  }
  return QuasiState(a.frame(), n, std::move(w));
}

QuasiState mix_with_uniform(const QuasiState& w1, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw BadEpsilon("epsilon must lie in [0, 1]");
  QuasiState out = w1;
  const double floor = (1.0 - epsilon) / static_cast<double>(w1.size());
  for (double& v : out.weights()) v = floor + epsilon * v;
  return out;
}

QuasiState quasi_from_product_terms(const std::vector<ProductTerm>& terms, const Frame& frame,
                                    std::size_t num_qubits) {
  const std::size_t f = frame.size();
  QuasiState out(frame, num_qubits, std::vector<double>(ipow(f, num_qubits), 0.0));
  std::vector<ComplexMatrix> single;
  single.reserve(f);
  for (std::size_t d = 0; d < f; ++d) {
    const std::size_t digit[1] = {d};
    single.push_back(q_operator(frame, digit));
  }
  for (const ProductTerm& term : terms) {
    if (term.factors.size() != num_qubits) throw ShapeError("product term has the wrong number of factors");
    std::vector<Complex> acc{term.coefficient};
    for (const ComplexMatrix& x : term.factors) {
      if (x.rows() != 2 || x.cols() != 2) throw ShapeError("product term factors must be 2x2");
      std::vector<Complex> next(acc.size() * f);
      for (std::size_t d = 0; d < f; ++d) {
        const Complex v = (x * single[d]).trace();
        for (std::size_t i = 0; i < acc.size(); ++i) next[i * f + d] = acc[i] * v;
      }
      acc = std::move(next);
    }
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] += acc[i].real();
  }
  return out;
}

double min_quasi_bound(std::size_t num_qubits, std::size_t frame_size) {
  return -std::pow(2.0, 2.0 * static_cast<double>(num_qubits) - 1.0) /
         std::pow(static_cast<double>(frame_size), static_cast<double>(num_qubits));
}

namespace {

constexpr char kMagic[4] = {'Q', 'L', 'R', 'W'};

template <class T>
void put(std::ostream& os, T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    value = std::bit_cast<T>(bytes);
  }
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T value{};
  if (!is.read(reinterpret_cast<char*>(&value), sizeof(T))) throw ParseError("truncated weight file");
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    value = std::bit_cast<T>(bytes);
  }
  return value;
}

struct WeightHeader {
  std::uint32_t num_qubits;
  std::uint32_t frame_size;
  std::string label;
};

WeightHeader read_header(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw ParseError("not a QLRW weight file");
  const auto version = get<std::uint32_t>(is);
  if (version != kWeightFileVersion) throw ParseError("unsupported weight file version " + std::to_string(version));
  WeightHeader h;
  h.num_qubits = get<std::uint32_t>(is);
  h.frame_size = get<std::uint32_t>(is);
  const auto label_size = get<std::uint32_t>(is);
  if (label_size > 4096) throw ParseError("frame label too long");
  h.label.resize(label_size);
  if (!is.read(h.label.data(), label_size)) throw ParseError("truncated weight file");
  return h;
}

QuasiState read_body(std::istream& is, const WeightHeader& h, const Frame& frame) {
  if (frame.size() != h.frame_size) throw ParseError("frame size in file does not match the supplied frame");
  if (h.num_qubits == 0 || h.num_qubits > QuasiState::kMaxQubits) throw ParseError("bad qubit count in weight file");
  std::vector<double> w(ipow(h.frame_size, h.num_qubits));
  for (double& v : w) v = get<double>(is);
  if (is.peek() != std::char_traits<char>::eof()) throw ParseError("trailing bytes in weight file");
  return QuasiState(frame, h.num_qubits, std::move(w));
}

}  // namespace

void write_weights(const std::filesystem::path& path, const QuasiState& w) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ParseError("cannot open " + path.string() + " for writing");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kWeightFileVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(w.num_qubits()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(w.frame().size()));
  const std::string& label = w.frame().label();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(label.size()));
  os.write(label.data(), static_cast<std::streamsize>(label.size()));
  for (double v : w.weights()) put<double>(os, v);
  if (!os) throw ParseError("failed writing " + path.string());
}

QuasiState read_weights(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open " + path.string());
  const WeightHeader h = read_header(is);
  return read_body(is, h, builtin_frame(h.label));
}

QuasiState read_weights(const std::filesystem::path& path, const Frame& frame) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError("cannot open " + path.string());
  const WeightHeader h = read_header(is);
  return read_body(is, h, frame);
}

}  // namespace qlrhv
