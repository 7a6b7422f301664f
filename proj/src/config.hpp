#ifndef VARHYDRO_CONFIG_HPP
#define VARHYDRO_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <string>

namespace varhydro
{

// Flat key/value configuration. INI-style sections prefix their keys
// ("[eos]" + "form=power" -> "eos.form"). '#' and ';' start comments.
class Config
{
public:
   static Config parse(std::istream &in);
   static Config parse_file(const std::string &path);

   bool has(const std::string &key) const { return kv_.count(key) != 0; }
   std::string get(const std::string &key, const std::string &def = "") const;
   double get_double(const std::string &key, double def) const;
   int get_int(const std::string &key, int def) const;
   bool get_bool(const std::string &key, bool def) const;

   void set(const std::string &key, const std::string &value) { kv_[key] = value; }
   const std::map<std::string, std::string> &items() const { return kv_; }

private:
   std::map<std::string, std::string> kv_;
};

} // namespace varhydro

#endif
