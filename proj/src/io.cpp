#include "coassim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace coassim {

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& file)
      : out_(file, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + file.string());
  }
  void header(const std::string& h) { out_ << h << '\n'; }
  void num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ << buf;
  }
  std::ofstream& raw() { return out_; }

 private:
  std::ofstream out_;
};

std::vector<double> split_row(const std::string& line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find(',', pos);
    const std::string_view tok(line.data() + pos,
                               (next == std::string::npos ? line.size()
                                                          : next) -
                                   pos);
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc())
      throw std::runtime_error("csv: bad number '" + std::string(tok) + "'");
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

template <class Fn>
void for_each_row(const std::filesystem::path& file, Fn&& fn) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    fn(split_row(line));
  }
}

}  // namespace

void write_truth_csv(const std::filesystem::path& file, const Grid3D& g,
                     const TruthField& t) {
  CsvWriter w(file);
  w.header("k,l,iy,ix,value");
  for (int k = 0; k < t.n_steps; ++k)
    for (int l = 0; l < g.n_levels(); ++l)
      for (int i = 0; i < g.n_cells(); ++i) {
        const CellIndex c = g.unflatten(i);
        w.raw() << k + 1 << ',' << l + 1 << ',' << c.iy << ',' << c.ix << ',';
        w.num(t.x[k][l][i]);
        w.raw() << '\n';
      }
  // Ghost values ride in a sibling file.
  CsvWriter wg(file.parent_path() / (file.stem().string() + "_ghost.csv"));
  wg.header("k,l,b,value");
  for (int k = 0; k < t.n_steps; ++k)
    for (int l = 0; l < g.n_levels(); ++l)
      for (int b = 0; b < g.n_ghost(); ++b) {
        wg.raw() << k + 1 << ',' << l + 1 << ',' << b << ',';
        wg.num(t.ghost[k][l][b]);
        wg.raw() << '\n';
      }
}

TruthField read_truth_csv(const std::filesystem::path& file, const Grid3D& g) {
  TruthField t;
  for_each_row(file, [&](const std::vector<double>& r) {
    const int k = int(r[0]) - 1, l = int(r[1]) - 1;
    const int i = g.flatten({int(r[3]), int(r[2])});
    if (k >= t.n_steps) {
      t.n_steps = k + 1;
      t.x.resize(t.n_steps,
                 std::vector<std::vector<double>>(
                     g.n_levels(), std::vector<double>(g.n_cells(), 0.0)));
      t.ghost.resize(t.n_steps,
                     std::vector<std::vector<double>>(
                         g.n_levels(), std::vector<double>(g.n_ghost(), 0.0)));
    }
    t.x[k][l][i] = r[4];
  });
  const auto gfile = file.parent_path() / (file.stem().string() + "_ghost.csv");
  if (std::filesystem::exists(gfile))
    for_each_row(gfile, [&](const std::vector<double>& r) {
      t.ghost[int(r[0]) - 1][int(r[1]) - 1][int(r[2])] = r[3];
    });
  return t;
}

void write_winds_csv(const std::filesystem::path& file, const Grid3D& g,
                     const WindField& w) {
  CsvWriter out(file);
  out.header("k,l,iy,ix,u,v");
  for (int k = 0; k < w.n_steps; ++k)
    for (int l = 0; l < g.n_levels(); ++l)
      for (int i = 0; i < g.n_cells(); ++i) {
        const CellIndex c = g.unflatten(i);
        out.raw() << k + 1 << ',' << l + 1 << ',' << c.iy << ',' << c.ix
                  << ',';
        out.num(w.u[k][l][i]);
        out.raw() << ',';
        out.num(w.v[k][l][i]);
        out.raw() << '\n';
      }
}

WindField read_winds_csv(const std::filesystem::path& file, const Grid3D& g,
                         int n_steps, double dt) {
  WindField w = make_wind_field(g, n_steps, dt);
  for_each_row(file, [&](const std::vector<double>& r) {
    const int k = int(r[0]) - 1, l = int(r[1]) - 1;
    const int i = g.flatten({int(r[3]), int(r[2])});
    w.u[k][l][i] = r[4];
    w.v[k][l][i] = r[5];
  });
  return w;
}

void write_clouds_csv(const std::filesystem::path& file, const Grid3D& g,
                      const CloudMask& m) {
  CsvWriter out(file);
  out.header("k,iy,ix,cloudy");
  for (int k = 0; k < m.n_steps; ++k)
    for (int i = 0; i < g.n_cells(); ++i) {
      const CellIndex c = g.unflatten(i);
      out.raw() << k + 1 << ',' << c.iy << ',' << c.ix << ','
                << (m.cloudy[k][i] ? 1 : 0) << '\n';
    }
}

CloudMask read_clouds_csv(const std::filesystem::path& file, const Grid3D& g) {
  CloudMask m;
  for_each_row(file, [&](const std::vector<double>& r) {
    const int k = int(r[0]) - 1;
    if (k >= m.n_steps) {
      m.n_steps = k + 1;
      m.cloudy.resize(m.n_steps, std::vector<bool>(g.n_cells(), false));
    }
    m.cloudy[k][g.flatten({int(r[2]), int(r[1])})] = r[3] != 0;
  });
  return m;
}

void write_observations_csv(const std::filesystem::path& file, const Grid3D& g,
                            const ObservationSet& obs) {
  CsvWriter out(file);
  out.header("k,l,iy,ix,value,sigma");
  for (int k = 0; k < obs.n_steps; ++k)
    for (int l = 0; l < obs.n_levels; ++l)
      for (const auto& o : obs.obs[k][l]) {
        const CellIndex c = g.unflatten(o.cell);
        out.raw() << k + 1 << ',' << l + 1 << ',' << c.iy << ',' << c.ix
                  << ',';
        out.num(o.value);
        out.raw() << ',';
        out.num(o.sigma);
        out.raw() << '\n';
      }
}

ObservationSet read_observations_csv(const std::filesystem::path& file,
                                     const Grid3D& g) {
  ObservationSet s;
  s.n_levels = g.n_levels();
  for_each_row(file, [&](const std::vector<double>& r) {
    const int k = int(r[0]) - 1, l = int(r[1]) - 1;
    if (k >= s.n_steps) {
      s.n_steps = k + 1;
      s.obs.resize(s.n_steps,
                   std::vector<std::vector<Observation>>(s.n_levels));
    }
    s.obs[k][l].push_back({g.flatten({int(r[3]), int(r[2])}), r[4], r[5]});
  });
  return s;
}

void write_field_csv(const std::filesystem::path& file, const Grid3D& g,
                     int n_steps, const std::vector<double>& mean,
                     const std::vector<double>& sd) {
  CsvWriter out(file);
  out.header("k,l,iy,ix,mean,sd");
  std::size_t j = 0;
  for (int k = 0; k < n_steps; ++k)
    for (int l = 0; l < g.n_levels(); ++l)
      for (int i = 0; i < g.n_cells(); ++i, ++j) {
        const CellIndex c = g.unflatten(i);
        out.raw() << k + 1 << ',' << l + 1 << ',' << c.iy << ',' << c.ix
                  << ',';
        out.num(mean[j]);
        out.raw() << ',';
        out.num(sd.empty() ? 0.0 : sd[j]);
        out.raw() << '\n';
      }
}

void read_field_csv(const std::filesystem::path& file, const Grid3D& g,
                    int n_steps, std::vector<double>& mean,
                    std::vector<double>& sd) {
  const std::size_t sz =
      static_cast<std::size_t>(n_steps) * g.n_levels() * g.n_cells();
  mean.assign(sz, 0.0);
  sd.assign(sz, 0.0);
  std::size_t n_rows = 0;
  for_each_row(file, [&](const std::vector<double>& r) {
    const int k = int(r[0]) - 1, l = int(r[1]) - 1;
    if (k < 0 || k >= n_steps || l < 0 || l >= g.n_levels())
      throw std::runtime_error("field csv: index out of range in " +
                               file.string());
    const std::size_t j =
        (static_cast<std::size_t>(k) * g.n_levels() + l) * g.n_cells() +
        g.flatten({int(r[3]), int(r[2])});
    mean[j] = r[4];
    sd[j] = r[5];
    ++n_rows;
  });
  if (n_rows != sz)
    throw std::runtime_error("field csv: expected " + std::to_string(sz) +
                             " rows, got " + std::to_string(n_rows) + " in " +
                             file.string());
}

void write_param_chains_csv(const std::filesystem::path& file,
                            const ParamChains& chains) {
  CsvWriter out(file);
  out.header("iter,level,m,f,sigma2_eta,sigma2_B");
  const int L = static_cast<int>(chains.m.size());
  for (int l = 0; l < L; ++l)
    for (std::size_t j = 0; j < chains.m[l].size(); ++j) {
      out.raw() << j + 1 << ',' << l + 1 << ',';
      out.num(chains.m[l][j]);
      out.raw() << ',';
      out.num(chains.f[l][j]);
      out.raw() << ',';
      out.num(chains.sigma2_eta[l][j]);
      out.raw() << ',';
      out.num(chains.sigma2_B[l][j]);
      out.raw() << '\n';
    }
}

std::uint64_t fnv1a_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::uint64_t h = 14695981039346656037ull;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  return h;
}

std::string fnv1a_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coassim
