#include "apx/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace apx {

Json envelope(const Json& config, const Json& report) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config;
  j["report"] = report;
  return j;
}

Json json_of(const ElementSet& s) {
  Json j;
  j["ring"] = Json::parse(s.ring()->describe());
  j["size"] = s.size();
  j["elements"] = s.encoded_sorted();
  if (s.truncated()) j["truncated"] = true;
  return j;
}

Json json_of(const CoverCertificate& c) {
  Json j;
  j["target"] = c.target_tag;
  j["cover"] = c.cover_tag;
  j["K"] = c.K();
  j["exactness"] = c.exact ? "exact" : "greedy-upper-bound";
  j["translates"] = c.translates.encoded_sorted();
  return j;
}

Json json_of(const ApproxReport& r) {
  Json j;
  j["K"] = r.K();
  j["certificate"] = json_of(r.k_min);
  j["growth_ratio"] = mpq_str(r.growth_ratio);
  return j;
}

Json json_of(const Commensurability& r) {
  Json j;
  j["K1_x_by_y"] = r.x_by_y.K();
  j["K2_y_by_x"] = r.y_by_x.K();
  j["certificate_x_by_y"] = json_of(r.x_by_y);
  j["certificate_y_by_x"] = json_of(r.y_by_x);
  return j;
}

Json json_of(const ThicknessResult& r, const RingPtr& ring) {
  Json j;
  j["N"] = r.N;
  j["N_lower"] = r.N_lower;
  j["exactness"] = r.exact ? "exact" : "greedy-bracket";
  Json w = Json::array();
  for (const Element& e : r.witness) w.push_back(ring->encode(e));
  j["free_subset_witness"] = w;
  return j;
}

static const char* status_str(BoundStatus s) {
  switch (s) {
    case BoundStatus::Pass:
      return "pass";
    case BoundStatus::Fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

Json json_of(const BoundSuiteReport& r) {
  Json arr = Json::array();
  for (const BoundCheck& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["measured_K"] = c.measured_k;
    j["bound"] = c.bound;
    j["achieved"] = c.achieved;
    j["status"] = status_str(c.status);
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  Json j;
  j["checks"] = arr;
  j["all_pass"] = r.all_pass();
  return j;
}

Json json_of(const DichotomyReport& r) {
  Json j;
  j["Y_size"] = r.Y.size();
  j["Y"] = r.Y.encoded_sorted();
  j["is_subring"] = r.is_subring;
  if (!r.is_subring) j["subring_violation"] = r.subring_violation;
  j["zero_divisor_subset"] = r.zero_divisors.encoded_sorted();
  if (r.thickness_in_Y)
    j["thickness"] = json_of(*r.thickness_in_Y, r.Y.ring());
  j["growth_ratio"] = mpq_str(r.growth_ratio);
  return j;
}

Json json_of(const NormValue& v) {
  Json j;
  j["value"] = mpq_str(v.value);
  j["nu"] = v.nu ? Json(v.nu->get_str()) : Json("infinite");
  return j;
}

Json json_of(const NormZeroReport& r) {
  Json j;
  j["closure_size"] = r.closure.size();
  j["zero_set"] = r.zero_set.encoded_sorted();
  j["is_ideal"] = r.is_ideal;
  if (!r.is_ideal) j["ideal_violation"] = r.ideal_violation;
  return j;
}

static Json json_violations(const std::vector<NormCounterexample>& v,
                            const RingPtr& ring) {
  Json arr = Json::array();
  for (const auto& c : v) {
    Json j;
    j["x"] = ring->encode(c.x);
    j["y"] = ring->encode(c.y);
    j["norm_x"] = mpq_str(c.norm_x);
    j["norm_y"] = mpq_str(c.norm_y);
    j["norm_result"] = mpq_str(c.norm_result);
    arr.push_back(j);
  }
  return arr;
}

Json json_of(const StrongNormReport& r, const RingPtr& ring) {
  Json j;
  j["sum_ok"] = r.sum_ok;
  j["product_ok"] = r.product_ok;
  j["zero_ok"] = r.zero_ok;
  j["exhaustive"] = r.exhaustive;
  j["pairs_checked"] = r.pairs_checked;
  j["sum_violations"] = json_violations(r.sum_violations, ring);
  j["product_violations"] = json_violations(r.product_violations, ring);
  j["zero_violations"] = json_violations(r.zero_violations, ring);
  return j;
}

Json json_of(const NilpotentCertificate& c) {
  Json j;
  j["subring"] = c.subring.encoded_sorted();
  j["subring_size"] = c.subring.size();
  j["ideal"] = c.ideal.encoded_sorted();
  j["ideal_size"] = c.ideal.size();
  j["containment_m"] = c.containment_m;
  j["class"] = c.quotient_class;
  j["coset_count"] = c.coset_count;
  if (c.base) {
    Json b = Json::array();
    for (const Element& e : *c.base)
      b.push_back(c.subring.ring()->encode(e));
    j["base"] = b;
  }
  return j;
}

Json json_of(const GrowthSeries& s) {
  Json j;
  j["sizes"] = s.sizes;
  j["truncated"] = s.truncated;
  j["generators"] = s.generator_desc;
  j["ambient"] = Json::parse(s.ambient_desc);
  return j;
}

static std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

Json json_of(const DegreeFit& f) {
  Json j;
  j["degree"] = fixed6(f.degree);
  j["residual"] = fixed6(f.residual);
  j["super_polynomial"] = f.super_polynomial;
  j["points_used"] = f.points_used;
  return j;
}

Json json_of(const GromovReport& r) {
  Json j;
  j["series"] = json_of(r.series);
  j["fit"] = json_of(r.fit);
  j["d_used"] = r.d_used;
  j["n_prime"] = r.n_prime ? Json(*r.n_prime) : Json("none");
  j["x_prime_size"] = r.x_prime_size;
  if (r.approx) j["approx"] = json_of(*r.approx);
  j["C_of_d"] = r.c_of_d;
  j["within_C_of_d"] = r.within_c_of_d;
  if (r.certificate) {
    j["certificate"] = json_of(*r.certificate);
    j["certificate_ring"] = Json::parse(r.certificate_ring);
  }
  j["torsion_free_assumed"] = r.torsion_free_assumed;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json json_of(const CloudStats& s) {
  Json j;
  j["count"] = s.count;
  if (s.min_gap_squared) {
    j["min_gap_squared"] = s.min_gap_squared->str();
    j["min_gap"] = fixed6(*s.min_gap);
  }
  if (s.max_gap) j["max_gap"] = fixed6(*s.max_gap);
  j["density"] = mpq_str(s.density);
  return j;
}

Json json_of(const PointCloud& cloud, bool include_points) {
  Json j;
  j["scheme_ring"] = Json::parse(cloud.scheme_ring->describe());
  j["direct_dim"] = cloud.dA;
  j["internal_dim"] = cloud.dB;
  j["count"] = cloud.points.size();
  j["truncation_R"] = mpq_str(cloud.truncation_R);
  j["window"] = cloud.window_desc;
  if (include_points) {
    Json pts = Json::array();
    for (const CloudPoint& p : cloud.points) {
      Json pj;
      pj["element"] = cloud.scheme_ring->encode(p.elem);
      Json dir = Json::array();
      for (const QuadVal& v : p.direct) dir.push_back(v.str());
      pj["direct"] = dir;
      pts.push_back(pj);
    }
    j["points"] = pts;
  }
  return j;
}

Json json_of(const CloudCoverReport& r) {
  Json j;
  j["certificate"] = json_of(r.certificate);
  j["K"] = r.certificate.K();
  j["restricted_points"] = r.restricted_points;
  j["target_points"] = r.target_points;
  j["targets_outside_truncation"] = r.targets_outside_truncation;
  return j;
}

Json json_of(const WindowCommensurability& r) {
  Json j;
  j["K1"] = r.narrow_by_wide.K();
  j["K2"] = r.wide_by_narrow.K();
  j["certificate_narrow_by_wide"] = json_of(r.narrow_by_wide);
  j["certificate_wide_by_narrow"] = json_of(r.wide_by_narrow);
  return j;
}

Json json_of(const SpanIdealReport& r) {
  Json j;
  j["dim"] = r.dim;
  Json rows = Json::array();
  for (const auto& row : r.basis) {
    Json rj = Json::array();
    for (const QuadVal& v : row) rj.push_back(v.str());
    rows.push_back(rj);
  }
  j["basis"] = rows;
  j["left_ideal"] = r.left_ideal;
  j["right_ideal"] = r.right_ideal;
  if (!r.violation.empty()) j["violation"] = r.violation;
  j["grid_defect"] = fixed6(r.grid_defect);
  return j;
}

Json json_of(const AlgebraCloudReport& r) {
  Json j;
  j["cloud"] = json_of(r.cloud);
  j["pairs_sampled"] = r.pairs_sampled;
  j["pairs_in_w2_window"] = r.pairs_in_w2_window;
  j["pairs_excluded"] = r.pairs_excluded;
  j["closure_ok"] = r.closure_ok;
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering

std::string render_table(
    const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows)
    os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
  return os.str();
}

static void render_json(const Json& j, int indent, std::ostringstream& os) {
  std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_json(it.value(), indent + 1, os);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    if (j.size() > 24) {
      os << pad << "[" << j.size() << " entries]\n";
      return;
    }
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        render_json(v, indent + 1, os);
        os << pad << "-\n";
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

std::string render_text(const Json& report, int indent) {
  std::ostringstream os;
  render_json(report, indent, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Files

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot open for writing: " + path);
  f << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_set_file(const std::string& path, const ElementSet& s) {
  std::ostringstream os;
  os << "# ring " << s.ring()->describe() << "\n";
  for (const std::string& e : s.encoded_sorted()) os << e << "\n";
  write_text_file(path, os.str());
}

ElementSet read_set_file(const std::string& path, const RingPtr& ring) {
  std::istringstream is(read_text_file(path));
  ElementSet s(ring);
  std::string line;
  while (std::getline(is, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    if (line[a] == '#') continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    s.insert(ring->parse(line.substr(a, b - a + 1)));
  }
  return s;
}

void write_cloud_file(const std::string& path, const PointCloud& cloud) {
  std::ostringstream os;
  os << "# scheme " << cloud.scheme_ring->describe() << "\n";
  os << "# truncation R = " << mpq_str(cloud.truncation_R) << ", window "
     << cloud.window_desc << "\n";
  for (const CloudPoint& p : cloud.points) {
    os << cloud.scheme_ring->encode(p.elem) << "\t";
    for (std::size_t i = 0; i < p.direct.size(); ++i)
      os << (i ? " " : "") << p.direct[i].str();
    os << "\n";
  }
  write_text_file(path, os.str());
}

void write_cloud_svg(const std::string& path, const PointCloud& cloud) {
  if (cloud.dA > 2)
    throw DomainError("write_cloud_svg: 1D or 2D direct spaces only");
  const double size = 640.0, pad = 20.0;
  double R = mpq_class(cloud.truncation_R).get_d();
  auto sx = [&](double v) { return pad + (v + R) / (2 * R) * (size - 2 * pad); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
     << "\" height=\"" << (cloud.dA == 1 ? 80.0 : size) << "\">\n";
  for (const CloudPoint& p : cloud.points) {
    double x = sx(p.direct[0].to_double());
    double y = cloud.dA == 1 ? 40.0 : sx(p.direct[1].to_double());
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\"/>\n";
  }
  os << "</svg>\n";
  write_text_file(path, os.str());
}

void write_series_csv(const std::string& path, const GrowthSeries& s) {
  std::ostringstream os;
  os << "n,size\n";
  for (std::size_t n = 0; n < s.sizes.size(); ++n)
    os << n << "," << s.sizes[n] << "\n";
  write_text_file(path, os.str());
}

}  // namespace apx
