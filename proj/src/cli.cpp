#include "schurkit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "schurkit/classify.hpp"
#include "schurkit/morphisms.hpp"
#include "schurkit/witness.hpp"

namespace schurkit {

using Json = nlohmann::ordered_json;

namespace {

constexpr uint64_t kDefaultBudget = 100000000ull;

struct Usage : std::runtime_error {
    explicit Usage(const std::string& msg) : std::runtime_error(msg) {}
};

const char* kHelp =
    "schurkit - Schur rings over finite abelian groups\n"
    "\n"
    "usage: schurkit [--budget N] <command> ...\n"
    "\n"
    "commands:\n"
    "  group info <spec>                     orders, primary decomposition, Sylow subgroups\n"
    "  sring build --from <file>             validate and re-emit an S-ring\n"
    "  sring build --group <spec> --cyclotomic <autos>\n"
    "                                        orbits of a group of automorphisms\n"
    "  sring build --group <spec> --wreath <file>\n"
    "                                        wreath product of the file's S-ring with Z(G/H)\n"
    "  sring build --fusion <file> [--phi <maps>]\n"
    "                                        algebraic fusion (default: all algebraic autos)\n"
    "  sring check <file>                    axiom + structure-constant report\n"
    "  iso alg <file> [<file2>]              algebraic automorphisms / isomorphisms\n"
    "  iso induced <file> <classmap>         search for an inducing combinatorial isomorphism\n"
    "  schurity <file>                       schurity test + stabilizer order\n"
    "  classify <spec>                       separability verdict for a group spec\n"
    "  witness <spec> [--no-direct]          non-separability witness certificate\n"
    "\n"
    "A group spec is 'x'-separated cyclic orders, e.g. 15x8 or 2x2x9.\n"
    "Automorphisms are generator-image lists like \"[0,1],[1,0]\"; several are\n"
    "separated by ';'. Class maps are comma-separated indices like \"0,2,1\".\n"
    "The node budget defaults to 1e8; SCHURKIT_BUDGET overrides the default\n"
    "and --budget overrides both.\n";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<uint32_t> parse_class_map(const std::string& s) {
    std::vector<uint32_t> map;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) fail(Err::ParseError, "empty entry in class map");
        map.push_back(static_cast<uint32_t>(std::stoul(tok)));
    }
    return map;
}

// "[a,b],[c,d]" -> one automorphism given by generator images.
GroupAutomorphism parse_automorphism(GroupPtr g, const std::string& s) {
    std::vector<uint32_t> images;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t open = s.find('[', pos);
        if (open == std::string::npos) break;
        std::size_t close = s.find(']', open);
        if (close == std::string::npos) fail(Err::ParseError, "unbalanced brackets in " + s);
        Residues r = parse_residues(s.substr(open, close - open + 1), g->factors().size());
        images.push_back(checked_index(*g, r));
        pos = close + 1;
    }
    if (images.size() != g->factors().size())
        fail(Err::ParseError, "need one generator image per primary factor");
    return make_automorphism(g, images);
}

std::vector<GroupAutomorphism> parse_automorphisms(GroupPtr g, const std::string& s) {
    std::vector<GroupAutomorphism> autos;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ';'))
        if (!tok.empty()) autos.push_back(parse_automorphism(g, tok));
    return autos;
}

int cmd_group(const std::vector<std::string>& args) {
    if (args.size() != 2 || args[0] != "info") throw Usage("group info <spec>");
    GroupPtr g = parse_group_literal(args[1]);
    Json j;
    j["group"] = g->literal();
    j["order"] = g->order();
    j["factors"] = g->factors();
    Json sylow = Json::object();
    std::vector<uint32_t> primes = g->factor_primes();
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (uint32_t p : primes) {
        Subgroup s = sylow_subgroup(g, p);
        Json sj;
        sj["order"] = s.order();
        std::vector<uint32_t> fs;
        for (std::size_t i = 0; i < g->factors().size(); ++i)
            if (g->factor_primes()[i] == p) fs.push_back(g->factors()[i]);
        sj["factors"] = fs;
        sylow[std::to_string(p)] = std::move(sj);
    }
    j["sylow"] = std::move(sylow);
    std::cout << j.dump(2) << "\n";
    return 0;
}

std::optional<std::string> flag_value(std::vector<std::string>& args, const std::string& name) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == name) {
            if (i + 1 >= args.size()) throw Usage(name + " needs a value");
            std::string v = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            return v;
        }
    }
    return std::nullopt;
}

bool flag_present(std::vector<std::string>& args, const std::string& name) {
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i] == name) {
            args.erase(args.begin() + i);
            return true;
        }
    return false;
}

int cmd_sring(std::vector<std::string> args, SearchBudget& budget) {
    if (args.empty()) throw Usage("sring build|check ...");
    std::string sub = args[0];
    args.erase(args.begin());
    if (sub == "check") {
        if (args.size() != 1) throw Usage("sring check <file>");
        SRing a = sring_from_json(read_file(args[0]));
        Json j;
        j["group"] = a.group()->literal();
        j["order"] = a.degree();
        j["rank"] = a.rank();
        j["identity_class"] = true;
        j["inverse_closed"] = true;
        j["product_closed"] = true;
        j["eq1"] = a.check_eq1();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (sub != "build") throw Usage("sring build|check ...");

    auto from = flag_value(args, "--from");
    auto group = flag_value(args, "--group");
    auto cyc = flag_value(args, "--cyclotomic");
    auto wreath = flag_value(args, "--wreath");
    auto fus = flag_value(args, "--fusion");
    auto phis = flag_value(args, "--phi");
    if (!args.empty()) throw Usage("unknown argument '" + args[0] + "'");

    std::optional<SRing> out;
    if (from) {
        out = sring_from_json(read_file(*from));
    } else if (cyc) {
        if (!group) throw Usage("--cyclotomic needs --group");
        GroupPtr g = parse_group_literal(*group);
        out = cyclotomic(g, parse_automorphisms(g, *cyc));
    } else if (wreath) {
        if (!group) throw Usage("--wreath needs --group");
        GroupPtr g = parse_group_literal(*group);
        SRing b = sring_from_json(read_file(*wreath));
        out = wreath_product(b, g).ring;
    } else if (fus) {
        SRing a = sring_from_json(read_file(*fus));
        std::vector<AlgebraicIso> maps;
        if (phis) {
            std::stringstream in(*phis);
            std::string tok;
            while (std::getline(in, tok, ';'))
                if (!tok.empty()) maps.push_back(algebraic_iso_from_map(a, a, parse_class_map(tok)));
        } else {
            maps = find_algebraic_autos(a);
        }
        out = fusion(a, maps);
    } else {
        throw Usage("sring build needs one of --from/--cyclotomic/--wreath/--fusion");
    }
    (void)budget;
    std::cout << sring_to_json(*out);
    return 0;
}

int cmd_iso(std::vector<std::string> args, SearchBudget& budget) {
    if (args.empty()) throw Usage("iso alg|induced ...");
    std::string sub = args[0];
    args.erase(args.begin());
    if (sub == "alg") {
        if (args.size() != 1 && args.size() != 2) throw Usage("iso alg <file> [<file2>]");
        SRing a = sring_from_json(read_file(args[0]));
        std::vector<AlgebraicIso> maps;
        if (args.size() == 2) {
            SRing b = sring_from_json(read_file(args[1]));
            maps = find_algebraic_isos(a, b);
        } else {
            maps = find_algebraic_autos(a);
        }
        Json j;
        j["count"] = maps.size();
        Json arr = Json::array();
        for (const auto& m : maps) arr.push_back(m.class_map);
        j["maps"] = std::move(arr);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (sub != "induced") throw Usage("iso alg|induced ...");
    if (args.size() != 2) throw Usage("iso induced <file> <classmap>");
    SRing a = sring_from_json(read_file(args[0]));
    AlgebraicIso phi = algebraic_iso_from_map(a, a, parse_class_map(args[1]));
    SchemeIsoResult r = find_inducing_iso(a, phi, budget);
    Json j;
    j["phi"] = phi.class_map;
    j["status"] = iso_status_name(r.status);
    j["e_fixed"] = true;
    if (r.witness) j["witness"] = *r.witness;
    j["nodes"] = r.nodes_explored;
    std::cout << j.dump(2) << "\n";
    return r.status == IsoStatus::Timeout ? 2 : 0;
}

int cmd_schurity(std::vector<std::string> args, SearchBudget& budget) {
    if (args.size() != 1) throw Usage("schurity <file>");
    SRing a = sring_from_json(read_file(args[0]));
    PermutationGroup stab = scheme_stabilizer_autos(a, budget);
    std::vector<std::vector<uint32_t>> orbs = orbits(stab);
    std::set<std::vector<uint32_t>> orb_set(orbs.begin(), orbs.end());
    std::set<std::vector<uint32_t>> cls_set(a.classes().begin(), a.classes().end());
    Json j;
    j["group"] = a.group()->literal();
    j["rank"] = a.rank();
    j["schurian"] = orb_set == cls_set;
    try {
        BigCount ord = stab.order();
        if (ord <= 9007199254740992ull)
            j["stabilizer_order"] = static_cast<uint64_t>(ord);
        else
            j["stabilizer_order"] = to_string(ord);
    } catch (const Error& e) {
        if (e.code() != Err::Overflow) throw;
        j["stabilizer_order"] = "exceeds 128-bit range";
    }
    j["stabilizer_orbits"] = orbs.size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_classify(std::vector<std::string> args) {
    if (args.size() != 1) throw Usage("classify <spec>");
    GroupPtr g = parse_group_literal(args[0]);
    GroupSpec spec{g->factors()};
    std::cout << verdict_to_json(spec, classify(spec));
    return 0;
}

int cmd_witness(std::vector<std::string> args, SearchBudget& budget) {
    bool no_direct = flag_present(args, "--no-direct");
    if (args.size() != 1) throw Usage("witness <spec> [--no-direct]");
    GroupPtr g = parse_group_literal(args[0]);
    GroupSpec spec{g->factors()};
    WitnessCertificate cert = build_witness(spec, budget, !no_direct);
    std::cout << certificate_to_json(cert);
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& argv) {
    std::vector<std::string> args = argv;
    try {
        uint64_t budget_nodes = kDefaultBudget;
        if (const char* env = std::getenv("SCHURKIT_BUDGET")) {
            try {
                budget_nodes = std::stoull(env);
            } catch (...) {
                throw Usage("SCHURKIT_BUDGET is not a number");
            }
        }
        if (auto b = flag_value(args, "--budget")) {
            try {
                budget_nodes = std::stoull(*b);
            } catch (...) {
                throw Usage("--budget is not a number");
            }
        }
        SearchBudget budget(budget_nodes);

        if (args.empty() || args[0] == "--help" || args[0] == "help") {
            std::cout << kHelp;
            return args.empty() ? 3 : 0;
        }
        std::string cmd = args[0];
        args.erase(args.begin());
        if (cmd == "group") return cmd_group(args);
        if (cmd == "sring") return cmd_sring(args, budget);
        if (cmd == "iso") return cmd_iso(args, budget);
        if (cmd == "schurity") return cmd_schurity(args, budget);
        if (cmd == "classify") return cmd_classify(args);
        if (cmd == "witness") return cmd_witness(args, budget);
        throw Usage("unknown command '" + cmd + "'");
    } catch (const Usage& u) {
        std::cerr << "usage error: " << u.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Err::BudgetExceeded ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace schurkit
