public class AccountLoader {
    public static SharedPreferences getPreferences(SharedPreferences prefs) { return checked(prefs); }
    private static SharedPreferences checked(SharedPreferences prefs) { return prefs; }
    private SharedPreferences defaults;

    public void loadAccount(Account account, SharedPreferences prefs) {
        account.setName(prefs.getString("name", null));
    }

    public void reload(Account account) {
        loadAccount(account, getPreferences(defaults));
    }
}
