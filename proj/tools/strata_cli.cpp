// Command-line front end. Exit codes: 0 ok, 1 negative verdict or failed
// verification, 2 heuristic exhausted, 3 input error.

#include "strata/certificate.hpp"
#include "strata/sp_action.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace strata;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kExhausted = 2;
constexpr int kInputError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) std::cout << text;
  else write_file(out_path, text);
}

struct Options {
  std::int64_t field_d = 1;
  std::string partition;
  std::string chi_path;
  std::string out_path;
  std::string svg_path;
  int max_steps = 20000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::vector<std::string> inputs;
};

PeriodVector load_chi(const Options& o) {
  if (o.chi_path.empty()) throw InputError("--chi is required");
  return parse_period_vector(read_file(o.chi_path), FieldContext(o.field_d));
}

Partition load_partition(const Options& o) {
  if (o.partition.empty()) throw InputError("--partition is required");
  return Partition::parse(o.partition);
}

int cmd_decide(const Options& o) {
  const PeriodVector chi = load_chi(o);
  const Partition part = load_partition(o);
  if (part.genus() != chi.genus()) throw InputError("partition genus does not match the character");
  const Verdict v = decide(chi, part);
  std::cout << v.describe() << '\n';
  std::cout << "verdict=" << (v.realizable ? "REALIZABLE" : "NOT_REALIZABLE") << '\n';
  std::cout << "volume=" << v.volume << '\n';
  std::cout << "image=" << to_string(v.image.classification) << '\n';
  if (v.image.covolume) std::cout << "covolume=" << *v.image.covolume << '\n';
  if (v.deficit) std::cout << "deficit=" << *v.deficit << '\n';
  return v.realizable ? kOk : kNegative;
}

int cmd_normalize(const Options& o) {
  const PeriodVector chi = load_chi(o);
  const ImageGroupReport img = image_group(chi);
  std::optional<NormalFormResult> nf;
  if (img.is_lattice()) {
    std::vector<int> m(static_cast<std::size_t>(chi.genus() - 1), 1);
    if (!o.partition.empty()) m = lattice_m_for(load_partition(o));
    nf = lattice_normal_form(chi, m);
  } else if (chi.genus() == 2) {
    nf = genus2_normalize(chi);
  } else {
    HeuristicOptions h;
    h.max_steps = o.max_steps;
    h.seed = o.seed;
    if (!o.partition.empty()) {
      const Partition part = load_partition(o);
      h.accept = [part](const PeriodVector& c) { return plan_generic(c, part).has_value(); };
    }
    nf = generic_normalize_heuristic(chi, h);
    if (!nf) {
      std::cout << "status=heuristic_exhausted\n";
      return kExhausted;
    }
  }
  emit(o.out_path, format_normal_form(*nf));
  if (!o.out_path.empty()) std::cout << "status=ok\nform=" << to_string(nf->form_tag) << '\n';
  return kOk;
}

int cmd_realize(const Options& o) {
  const PeriodVector chi = load_chi(o);
  const Partition part = load_partition(o);
  RealizeOptions ro;
  ro.max_steps = o.max_steps;
  ro.seed = o.seed;
  const RealizeOutcome out = realize(chi, part, ro);
  std::cout << "status=" << to_string(out.status) << '\n';
  if (out.status == RealizeStatus::not_realizable) {
    std::cout << out.message << '\n';
    return kNegative;
  }
  if (out.status == RealizeStatus::heuristic_exhausted) {
    std::cout << "message=" << out.message << '\n';
    return kExhausted;
  }
  const RealizationCertificate& cert = *out.certificate;
  emit(o.out_path, format_certificate(cert));
  if (!o.svg_path.empty() && cert.diagram) write_file(o.svg_path, render_svg(*cert.diagram));
  std::cout << "polygons=" << cert.surface.polygon_count() << '\n';
  std::cout << "stratum=" << stratum(cert.surface).str() << '\n';
  return kOk;
}

int cmd_verify(const Options& o) {
  if (o.inputs.empty()) throw InputError("verify needs at least one certificate file");
  struct Result {
    std::string text;
    int code = kOk;
  };
  std::vector<Result> results(o.inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < o.inputs.size(); k = next++) {
      Result& r = results[k];
      std::ostringstream os;
      os << "file=" << o.inputs[k] << '\n';
      try {
        const auto cert = parse_certificate(read_file(o.inputs[k]), FieldContext(o.field_d));
        const VerificationReport rep = verify_certificate(cert);
        os << rep.str();
        r.code = rep.all_pass() ? kOk : kNegative;
      } catch (const std::exception& e) {
        os << "error=" << e.what() << '\n';
        r.code = kInputError;
      }
      r.text = os.str();
    }
  };
  const int n = std::max(1, std::min<int>(o.jobs, static_cast<int>(o.inputs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int code = kOk;
  for (const auto& r : results) {
    std::cout << r.text;
    code = std::max(code, r.code);
  }
  return code;
}

int cmd_render(const Options& o) {
  if (o.svg_path.empty()) throw InputError("render needs --svg");
  if (!o.chi_path.empty()) {
    const RealizeOutcome out = realize(load_chi(o), load_partition(o), {o.max_steps, o.seed});
    if (!out.certificate) {
      std::cout << "status=" << to_string(out.status) << '\n';
      return out.status == RealizeStatus::heuristic_exhausted ? kExhausted : kNegative;
    }
    write_file(o.svg_path, render_svg(*out.certificate->diagram));
    return kOk;
  }
  if (o.inputs.size() != 1) throw InputError("render needs one TSURF or certificate file, or --chi");
  const std::string text = read_file(o.inputs.front());
  if (text.rfind("CERTIFICATE", 0) == 0)
    write_file(o.svg_path, render_surface_svg(parse_certificate(text, FieldContext(o.field_d)).surface));
  else
    write_file(o.svg_path, render_surface_svg(parse_tsurf(text, FieldContext(o.field_d)).first));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Period characters of abelian differentials in prescribed strata"};
  app.require_subcommand(1);
  Options o;
  auto common = [&o](CLI::App* c) {
    c->add_option("--field-d", o.field_d, "squarefree d of the field Q(sqrt d); 1 for Q");
    c->add_option("--partition", o.partition, "stratum as n1,n2,...");
    c->add_option("--chi", o.chi_path, "period vector file");
    c->add_option("--out", o.out_path, "output file (default standard output)");
    c->add_option("--svg", o.svg_path, "SVG output file");
    c->add_option("--max-steps", o.max_steps, "heuristic step cap");
    c->add_option("--seed", o.seed, "heuristic seed");
    c->add_option("--jobs", o.jobs, "parallel verification jobs")->check(CLI::PositiveNumber);
    c->add_option("inputs", o.inputs, "input files");
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> cmds = {
      {app.add_subcommand("decide", "decide realizability"), cmd_decide},
      {app.add_subcommand("normalize", "symplectic normal form"), cmd_normalize},
      {app.add_subcommand("realize", "build a certified surface"), cmd_realize},
      {app.add_subcommand("verify", "verify certificates"), cmd_verify},
      {app.add_subcommand("render", "draw a surface or slit diagram"), cmd_render},
  };
  for (auto& [c, f] : cmds) common(c);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  try {
    for (auto& [c, f] : cmds)
      if (c->parsed()) return f(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
