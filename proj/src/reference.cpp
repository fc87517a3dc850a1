#include "biharm/reference.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "biharm/error.hpp"

namespace biharm {

namespace {

std::vector<ReferenceEntry> entries(std::initializer_list<std::pair<int, std::string_view>> list) {
  std::vector<ReferenceEntry> out;
  for (const auto& [j, value] : list) out.push_back({j, value, significant_digits(value)});
  return out;
}

std::vector<ReferenceTable> make_tables() {
  std::vector<ReferenceTable> t;
  t.push_back({"square", "First ten eigenvalues of the unit square",
               entries({{1, "1294.9339795917128081703026479743085522513148"},
                        {2, "5386.6565607779451709440883164319500534323747"},
                        {3, "5386.6565607779451709440883164319500534323747"},
                        {4, "11710.811238205718716479524026744165110548790"},
                        {5, "17313.499721776700784267277477409032730611369"},
                        {6, "17478.106551478646880691169158961070602062916"},
                        {7, "27225.134042723468407942851261240075600133838"},
                        {8, "27225.134042723468407942851261240075600133838"},
                        {9, "44319.444997239644605551889845792194008818266"},
                        {10, "44319.444997239644605551889845792194008818266"}})});
  t.push_back({"lshape", "Reference values for the L-shaped domain",
               entries({{1, "418.9752928519954616775618775449403"},
                        {2, "690.9065117037020521173375432095840"},
                        {3, "931.5792655819233500496763905727078"},
                        {4, "1634.533781725410909450276640848249"},
                        {5, "2090.839376830117972780944169183919"},
                        {6, "3350.410627882138361796676879507818"},
                        {7, "3720.925878799246215492176662379798"},
                        {8, "4485.620042035762239796922517307530"},
                        {9, "4560.432156327978825966680488256231"},
                        {10, "5738.403842705743348891002113406246"}})});
  t.push_back({"drums-simply-supported", "Isospectral drums, simply supported (both domains)",
               entries({{1, "10.36402107986949540721"},
                        {2, "16.402184923407268356740"},
                        {3, "36.28192141809921686643"},
                        {4, "47.33781364226172710396"},
                        {5, "61.23040947172451684072"},
                        {6, "90.01373420512098390986"},
                        {7, "119.052506025401956876870"},
                        {8, "135.11181644660087949787"},
                        {9, "152.2017047406288081819380"},
                        {10, "187.12311642208418946283"}})});
  t.push_back({"drums-clamped-left", "Isospectral drums, clamped (left domain)",
               entries({{1, "28.0586863865423000549087398"},
                        {2, "42.80755796191819473005366012"},
                        {3, "73.51576421441210956574548706"},
                        {4, "109.355356090831716811598988"},
                        {5, "123.8961882657907045115913099"},
                        {6, "151.830513099492311414264541"},
                        {7, "227.038626156347910723847312"},
                        {8, "251.63057739930330617446625802"},
                        {9, "290.252435400071762741097143187"},
                        {10, "311.16810084585353295577573668"}})});
  t.push_back({"drums-clamped-right", "Isospectral drums, clamped (right domain)",
               entries({{1, "25.01410502064436259175268775"},
                        {2, "50.67098031228146895086815044"},
                        {3, "72.0887124830690440717331005"},
                        {4, "101.50786786148196218598065170"},
                        {5, "119.568610048818932875544158"},
                        {6, "162.5851723649249044594031075"},
                        {7, "217.9878528191822288137668706"},
                        {8, "263.6684022735138072395955186"},
                        {9, "297.5045897085804999794427456"},
                        {10, "315.5017873309864911264409052"}})});
  t.push_back({"rect-hole", "First ten eigenvalues for the rectangle with a hole",
               entries({{1, "0.10698498562334817102814013"},
                        {2, "0.35605676603875088420438615"},
                        {3, "0.94524070807442103593431671"},
                        {4, "2.53208704546115218637535529"},
                        {5, "3.99930885285784387075239865"},
                        {6, "5.57646932761755697998226709"},
                        {7, "6.43857726128711796898224149"},
                        {8, "9.13840065843740557418337614"},
                        {9, "16.4479467402360010159306274"},
                        {10, "17.4245866515989760773466203"}})});
  // Principal eigenvalues on triangles, j = 1..4 for the spaces C, S, V, M.
  t.push_back({"triangle-equilateral-s0", "Principal eigenvalues, equilateral triangle, s = 0",
               entries({{1, "9804.9449874764568054397360472302"},
                        {2, "2770.74747830051377028096946314538"},
                        {3, "72.942664620393689247350334919683"},
                        {4, "185.10778102243532486304991536227"}})});
  t.push_back({"triangle-right-isosceles-s0", "Principal eigenvalues, right-isosceles triangle, s = 0",
               entries({{1, "35185.638471713425529039119075"},
                        {2, "9740.9091034002437236440332688705"},
                        {3, "142.9905816658059570843982031023"},
                        {4, "492.33162470634854919442608899"}})});
  t.push_back({"triangle-90-60-30-s0", "Principal eigenvalues, 90-60-30 triangle, s = 0",
               entries({{1, "55407.231456202639937488311240"},
                        {2, "15085.180715191686082640833743"},
                        {3, "120.61629780957915519675157481"},
                        {4, "391.7946452226036199316742042"}})});
  t.push_back({"triangle-equilateral-s1", "Principal eigenvalues, equilateral triangle, s = 1",
               entries({{1, "146.412905109344790007913155148663"},
                        {2, "52.6378901391432459671172853326728"},
                        {3, "9.86394388190996483130098955949938"},
                        {4, "32.906393793581628348514192294762"}})});
  t.push_back({"triangle-right-isosceles-s1", "Principal eigenvalues, right-isosceles triangle, s = 1",
               entries({{1, "279.14825470003949590687643840"},
                        {2, "98.696044010893586188344909998761"},
                        {3, "8.37347027272868454327196355771"},
                        {4, "36.63077785104390025356999314735"}})});
  t.push_back({"triangle-90-60-30-s1", "Principal eigenvalues, 90-60-30 triangle, s = 1",
               entries({{1, "352.12132391711858946305008173"},
                        {2, "122.82174365800090725660699910"},
                        {3, "8.5380950929242319268917035189"},
                        {4, "33.45210121650411459840950230"}})});
  return t;
}

}  // namespace

double ReferenceEntry::to_double() const { return std::strtod(std::string(value).c_str(), nullptr); }

const ReferenceEntry& ReferenceTable::entry(int j) const {
  for (const ReferenceEntry& e : entries) {
    if (e.j == j) return e;
  }
  throw Error(ErrorKind::InvalidConfig, "table '" + std::string(id) + "' has no entry " + std::to_string(j));
}

const std::vector<ReferenceTable>& reference_tables() {
  static const std::vector<ReferenceTable> tables = make_tables();
  return tables;
}

const ReferenceTable& reference_table(std::string_view id) {
  for (const ReferenceTable& t : reference_tables()) {
    if (t.id == id) return t;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown benchmark '" + std::string(id) + "'");
}

const std::vector<std::string>& triangle_shapes() {
  static const std::vector<std::string> shapes{"equilateral", "right-isosceles", "90-60-30"};
  return shapes;
}

std::string triangle_table_id(std::string_view shape, int s) {
  return "triangle-" + std::string(shape) + "-s" + std::to_string(s);
}

const std::vector<ConstantReference>& constant_references() {
  static const std::vector<ConstantReference> refs{{"equilateral", 0, "0.07350005475651561"},
                                                   {"equilateral", 1, "0.1743250725741249"},
                                                   {"right-isosceles", 0, "0.045068295511191264"},
                                                   {"right-isosceles", 1, "0.16522544473105152"}};
  return refs;
}

int significant_digits(std::string_view decimal) {
  int digits = 0;
  bool leading = true;
  for (char c : decimal) {
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  return digits;
}

double relative_deviation(double computed, const ReferenceEntry& ref) {
  const double value = ref.to_double();
  return std::abs(computed - value) / std::abs(value);
}

}  // namespace biharm
