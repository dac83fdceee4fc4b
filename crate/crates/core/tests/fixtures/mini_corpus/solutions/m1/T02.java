import java.util.Arrays;
import java.util.List;

public class MaxFinder {
    public static int max(int[] a) {
        int Best = a[0];
        for (int i = 1; i < a.length; i++) {
            if (a[i] > Best) Best = a[i];
        }
        return Best;
    }

    public static void main(String[] args) {
        int[] numbers = {7, 2, 9, 4};
        System.out.println("Max is " + max(numbers));
    }
}
