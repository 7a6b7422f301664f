#include "config.hpp"
#include "errors.hpp"

#include <fstream>
#include <sstream>

namespace varhydro
{

namespace
{

std::string trim(const std::string &s)
{
   const auto a = s.find_first_not_of(" \t\r\n");
   if (a == std::string::npos) { return ""; }
   const auto b = s.find_last_not_of(" \t\r\n");
   return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse(std::istream &in)
{
   Config cfg;
   std::string line, section;
   int lineno = 0;
   while (std::getline(in, line))
   {
      lineno++;
      const auto hash = line.find_first_of("#;");
      if (hash != std::string::npos) { line = line.substr(0, hash); }
      line = trim(line);
      if (line.empty()) { continue; }
      if (line.front() == '[')
      {
         if (line.back() != ']')
         {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": malformed section header");
         }
         section = trim(line.substr(1, line.size() - 2));
         continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
      {
         throw ConfigError("config line " + std::to_string(lineno) +
                           ": expected key=value");
      }
      std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
      {
         throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      }
      if (!section.empty()) { key = section + "." + key; }
      cfg.kv_[key] = value;
   }
   return cfg;
}

Config Config::parse_file(const std::string &path)
{
   std::ifstream in(path);
   if (!in) { throw ConfigError("cannot open config file " + path); }
   return parse(in);
}

std::string Config::get(const std::string &key, const std::string &def) const
{
   auto it = kv_.find(key);
   return it == kv_.end() ? def : it->second;
}

double Config::get_double(const std::string &key, double def) const
{
   auto it = kv_.find(key);
   if (it == kv_.end()) { return def; }
   try
   {
      size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) { throw std::invalid_argument(""); }
      return v;
   }
   catch (const std::exception &)
   {
      throw ConfigError("config key '" + key + "': bad numeric value '" +
                        it->second + "'");
   }
}

int Config::get_int(const std::string &key, int def) const
{
   auto it = kv_.find(key);
   if (it == kv_.end()) { return def; }
   try
   {
      size_t pos = 0;
      const int v = std::stoi(it->second, &pos);
      if (pos != it->second.size()) { throw std::invalid_argument(""); }
      return v;
   }
   catch (const std::exception &)
   {
      throw ConfigError("config key '" + key + "': bad integer value '" +
                        it->second + "'");
   }
}

bool Config::get_bool(const std::string &key, bool def) const
{
   auto it = kv_.find(key);
   if (it == kv_.end()) { return def; }
   const std::string &v = it->second;
   if (v == "1" || v == "true" || v == "on" || v == "yes") { return true; }
   if (v == "0" || v == "false" || v == "off" || v == "no") { return false; }
   throw ConfigError("config key '" + key + "': bad boolean value '" + v + "'");
}

} // namespace varhydro
