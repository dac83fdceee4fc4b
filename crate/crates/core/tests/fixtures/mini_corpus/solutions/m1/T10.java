public class Gcd {
    public static int gcd(int a, int b) {
        while (b != 0) {
            int temp = b;
            b = a % b;
            a = temp;
        }
        return a;
    }

    public static void main(String[] args) {
        int x = 84;
        int y = 36;
        System.out.println("GCD of " + x + " and " + y + " is " + gcd(x, y));
    }
}
