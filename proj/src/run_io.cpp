#include "manakov/run_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "manakov/fourier.hpp"

namespace manakov {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out.is_open()) throw IoError("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// Evenly spaced indices 0..count-1 thinned to at most `target` entries,
// always keeping both endpoints.
std::vector<std::size_t> thin_indices(std::size_t count, std::size_t target) {
  std::vector<std::size_t> idx;
  if (count == 0) return idx;
  if (target < 2 || count <= target) {
    idx.resize(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    return idx;
  }
  idx.reserve(target);
  for (std::size_t k = 0; k < target; ++k) {
    const std::size_t i = (k * (count - 1) + (target - 1) / 2) / (target - 1);
    if (idx.empty() || idx.back() != i) idx.push_back(i);
  }
  return idx;
}

}  // namespace

std::string format_sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", x);
  return buf;
}

void ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out = open_out(path);
  out << content;
  finish(out, path);
}

void write_invariants_csv(const std::string& path,
                          const std::vector<InvariantSample>& log, int stride) {
  if (log.empty()) throw IoError("empty invariant log for " + path);
  if (stride < 1) stride = 1;
  const std::size_t n = log.front().Mi.size();

  std::ofstream out = open_out(path);
  out << "t";
  for (std::size_t c = 0; c < n; ++c) out << ",M" << c + 1;
  out << ",M,K,H,eH,eK,eM";
  for (std::size_t c = 0; c < n; ++c) out << ",e" << c + 1;
  out << "\n";

  const InvariantSample& ref = log.front();
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != log.size())
      continue;
    const InvariantSample& s = log[i];
    out << format_sci(s.t);
    for (std::size_t c = 0; c < n; ++c) out << "," << format_sci(s.Mi[c]);
    out << "," << format_sci(s.M) << "," << format_sci(s.K) << ","
        << format_sci(s.H);
    out << "," << format_sci(std::abs(s.H - ref.H)) << ","
        << format_sci(std::abs(s.K - ref.K)) << ","
        << format_sci(std::abs(s.M - ref.M));
    for (std::size_t c = 0; c < n; ++c)
      out << "," << format_sci(std::abs(s.Mi[c] - ref.Mi[c]));
    out << "\n";
  }
  finish(out, path);
}

void write_converge_csv(const std::string& path,
                        const std::vector<ConvergenceRow>& rows) {
  std::ofstream out = open_out(path);
  out << "method,h,e_y,rate\n";
  for (const ConvergenceRow& r : rows) {
    out << '"' << r.method << "\"," << format_sci(r.h) << ","
        << format_sci(r.e_y) << ",";
    if (std::isfinite(r.rate)) out << format_sci(r.rate);
    out << "\n";
  }
  finish(out, path);
}

void write_space_csv(const std::string& path,
                     const std::vector<SpaceRow>& rows) {
  std::ofstream out = open_out(path);
  out << "method,h,N,e_y\n";
  for (const SpaceRow& r : rows) {
    out << '"' << r.method << "\"," << format_sci(r.h) << "," << r.N << ","
        << format_sci(r.e_y) << "\n";
  }
  finish(out, path);
}

void write_rank_csv(const std::string& path, const std::vector<double>& times,
                    const std::vector<double>& ratios) {
  if (times.size() != ratios.size())
    throw std::invalid_argument("rank csv: times/ratios length mismatch");
  std::ofstream out = open_out(path);
  out << "step,t,ratio\n";
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    out << i + 1 << "," << format_sci(times[i]) << "," << format_sci(ratios[i])
        << "\n";
  }
  finish(out, path);
}

void write_field_grids(const std::string& dir, const ManakovProblem& problem,
                       const FourierBasis& basis, const Trajectory& traj,
                       int nx, int nt, double xmin, double xmax) {
  if (nx < 2 || nt < 1) throw std::invalid_argument("field grid: nx/nt too small");
  if (!(xmax > xmin)) throw std::invalid_argument("field grid: empty x window");
  if (traj.states.empty())
    throw std::invalid_argument("field grid: trajectory has no stored states");

  std::vector<double> xs(nx);
  for (int i = 0; i < nx; ++i)
    xs[i] = xmin + (xmax - xmin) * static_cast<double>(i) / (nx - 1);

  const std::vector<std::size_t> idx =
      thin_indices(traj.states.size(), static_cast<std::size_t>(nt));

  const int n = problem.n;
  std::vector<std::ofstream> outs;
  std::vector<std::string> paths;
  outs.reserve(n + 1);
  for (int c = 0; c < n; ++c)
    paths.push_back((std::filesystem::path(dir) /
                     ("fields_psi" + std::to_string(c + 1) + ".dat"))
                        .string());
  paths.push_back((std::filesystem::path(dir) / "fields_total.dat").string());
  for (const std::string& p : paths) outs.push_back(open_out(p));

  for (std::size_t block = 0; block < idx.size(); ++block) {
    const double t = traj.times[idx[block]];
    const Mat vals = synthesize(basis, traj.states[idx[block]], xs);
    for (int i = 0; i < nx; ++i) {
      double total = 0.0;
      for (int c = 0; c < n; ++c) {
        const double u = vals(2 * c, i), v = vals(2 * c + 1, i);
        const double dens = u * u + v * v;
        total += dens;
        outs[c] << format_sci(xs[i]) << " " << format_sci(t) << " "
                << format_sci(dens) << "\n";
      }
      outs[n] << format_sci(xs[i]) << " " << format_sci(t) << " "
              << format_sci(total) << "\n";
    }
    if (block + 1 != idx.size())
      for (std::ofstream& out : outs) out << "\n";
  }
  for (std::size_t f = 0; f < outs.size(); ++f) finish(outs[f], paths[f]);
}

}  // namespace manakov
